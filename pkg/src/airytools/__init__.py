from .airy import (
    eval_pair,
    real_zero
)
from .boundary import (
    BoundaryKind,
    BoundaryType
)
