r"""
General space to store global information used elsewhere such as tolerances, exit codes, family names etc.
"""


class BColors:
    """
    A class to change the colors of the strings.
    """

    HEADER = "\033[95m"
    OKBLUE = "\033[94m"
    OKCYAN = "\033[96m"
    OKGREEN = "\033[92m"
    WARNING = "\033[93m"
    FAIL = "\033[91m"
    ENDC = "\033[0m"
    BOLD = "\033[1m"
    UNDERLINE = "\033[4m"


SCHEMA_VERSION = 1

# numeric tolerances
RESIDUAL_TOL = 1e-9
ROOT_TOL = 1e-9
DEV_TOL = 1e-8
INDETERMINATE_EPS = 1e-300
OVERFLOW_BOUND = 1e150
CONTRACTION_EPS = 1e-12
PIVOT_TOL = 1e-12

# the search for j with a == tau^j stops at this exponent
MAX_GEN_LOG = 64

DEFAULT_DEV_DEPTH = 3
DEFAULT_ORBIT_STEPS = 50
DEFAULT_SEED = 1

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VERIFY_FAILED = 2

MODES = ("exact", "complex")

GERM_FAMILIES = ("birat", "favre", "enoki", "ih", "hopf")

# letters of the GL(2,Z) word
LETTER_MATRIX_DICT = {
    "A": (1, 1, 0, 1),
    "Aprime": (0, 1, 1, 1),
}
