"""Information-theoretic fuzzy extractors over structured binary sources."""

from .errors import (CapacityError, DigestMismatch, FormatError, FuzexError,
                     ParameterError, ProtocolError)
from .extractor import ToeplitzSeed, extract
from .field import FieldElement, fe_add, fe_inverse, fe_mul, fe_pow
from .mac import MacKey, mac_eval, mac_verify
from .params import (Params, check, correctness_bound, max_key_length, robustness_bound,
                     solve_ell, validate)
from .rfe import RfeHelperData, rfe_gen, rfe_rep
from .sampler import Crs, generate_crs, sample_index_set
from .sources import NoiseModel, SourceModel
from .srrfe import SrrfeHelperData, srrfe_gen, srrfe_rep

__version__ = "0.1.0"
