"""Disentangled explanations for two-modality black-box classifiers.

A library and a command line tool that split the output of any
two-modality classifier into unimodal contributions (UC) and multimodal
interactions (MI), then explain each part per modality with local
linear surrogates.

The main entry points are:

- :class:`~disentangled_explainer.dime.DimeExplainer`, which produces the
  four explanations (UC and MI for each modality) of a datapoint;
- :mod:`disentangled_explainer.dime.validation`, the pipelines that check
  the explanations against the synthetic dataset ground truth;
- the ``disentangled-explainer`` command line tool.
"""

__version__ = "0.1.0"
