from disentangled_explainer.cli.main import run

run()
