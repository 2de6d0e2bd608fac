"""The model gateway: a uniform access to two-modality black boxes.

- :class:`ModalityValue` is one modality input;
- :class:`BlackBoxModel` is the batched model abstraction, implemented
  in-process by the reference :class:`MlpModel` and the toy models, and
  out of process by :class:`ExternalModelSession`;
- :class:`CountingModel` wraps a model to count its evaluations.
"""

from .black_box_model import BlackBoxModel, CountingModel, GatewayError
from .external_model import (
    ExternalModelSession,
    HandshakeTimeoutError,
    ProtocolError,
    SchemaMismatchError,
    SessionDeadError,
    external_model_session,
)
from .mlp_model import LAYER_SIZES, MlpModel, mlp_forward
from .mlp_trainer import (
    TrainingError,
    TrainingHyperparameters,
    TrainingReport,
    gradient_check,
    mlp_train,
)
from .modality_value import ModalityKind, ModalityPair, ModalityValue
from .toy_models import (
    AdditiveModel,
    ConstantModel,
    FunctionModel,
    ProductModel,
)

__all__ = [
    "ModalityKind",
    "ModalityValue",
    "ModalityPair",
    "BlackBoxModel",
    "CountingModel",
    "GatewayError",
    "ExternalModelSession",
    "external_model_session",
    "HandshakeTimeoutError",
    "SchemaMismatchError",
    "ProtocolError",
    "SessionDeadError",
    "LAYER_SIZES",
    "MlpModel",
    "mlp_forward",
    "mlp_train",
    "gradient_check",
    "TrainingError",
    "TrainingHyperparameters",
    "TrainingReport",
    "AdditiveModel",
    "ConstantModel",
    "FunctionModel",
    "ProductModel",
]
