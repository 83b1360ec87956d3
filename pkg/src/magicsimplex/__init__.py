"""Magic-simplex entanglement atlas: state families, criteria, and
quasirandom volume estimation for the two-qutrit and two-ququart
Hiesmayr-Loeffler families."""

from .criteria import CriteriaProfile, Thresholds, profile
from .errors import MagicSimplexError
from .quasirandom import SequenceSpec
from .states import BlochDecomposition, QPoint, bloch_decompose, build_density

__all__ = [
    "BlochDecomposition",
    "CriteriaProfile",
    "MagicSimplexError",
    "QPoint",
    "SequenceSpec",
    "Thresholds",
    "bloch_decompose",
    "build_density",
    "profile",
]

__version__ = "0.1.0"
