"""
Application configuration and constants
"""

from pathlib import Path


class AppSettings:
    """Application settings and configuration"""
    APP_NAME = "Foliated Singularity Toolkit"
    APP_VERSION = "1.0.0"
    APP_AUTHOR = "Foliated Singularity Toolkit Team"

    # File Paths
    BASE_DIR = Path(__file__).parent
    DATA_DIR = BASE_DIR / "data"
    LOG_DIR = DATA_DIR / "logs"
    SAMPLES_DIR = BASE_DIR / "resources" / "samples"

    # Exact algebra
    DEFAULT_CODIM_PADDING = 4  # working order = 2 * expected codim + padding

    # Leafwise critical points
    RESIDUAL_TOLERANCE = 1e-12
    DEDUP_RADIUS = 1e-8
    EIGEN_ZERO_THRESHOLD = 1e-7
    OFF_CRITICAL_GRADIENT = 1e-6  # Hessians above this leafwise gradient norm warn
    NEWTON_MAX_ITERATIONS = 200
    DEFAULT_LEAF_GRID = 11
    DEFAULT_TRANSVERSE_GRID = 5
    EXACT_POINT_DENOMINATOR = 10**6
    SYMBOL_JET_ORDER = 3

    # Leafwise gradient flow
    FLOW_ERROR_CONTROL = 1e-9
    FLOW_CONVERGENCE_NORM = 1e-8
    FLOW_MAX_TIME = 50.0
    FLOW_MAX_STEPS = 10**6
    MONOTONICITY_SLACK = 1e-9
    NEAR_SKELETON_EPSILON = 1e-3
    CONFINEMENT_TOLERANCE = 1e-6
    STABLE_SET_DRIFT_TOLERANCE = 1e-8
    STABLE_SET_STEP_TOLERANCE = 1e-10
    ADAPTEDNESS_TOLERANCE = 1e-12
    DESCENT_UNRESOLVED_FRACTION = 0.01
    DEFAULT_SAMPLE_SEED = 0

    # Report output
    FLOAT_SIGNIFICANT_DIGITS = 17

    @classmethod
    def ensure_directories(cls):
        """Ensure all required directories exist"""
        cls.DATA_DIR.mkdir(exist_ok=True)
        cls.LOG_DIR.mkdir(exist_ok=True)


# Report formats understood by the command line
OUTPUT_FORMATS = ["table", "json", "csv"]

# Exit codes of the command line
EXIT_SUCCESS = 0
EXIT_FAIL_VERDICT = 1
EXIT_INPUT_ERROR = 2
EXIT_INTERNAL_ASSERTION = 3

# Catalog of germs (polynomial terms) and foliated charts used across the
# documentation, the command line and the test-suite.
CATALOG = {
    "germs": {
        "fold_x2": {"n": 1, "p": 1, "order": 2, "components": ["x1^2"], "symbol": (1, 0)},
        "cusp_x3": {"n": 1, "p": 1, "order": 3, "components": ["x1^3"], "symbol": (1, 1, 0)},
        "zero_2jet": {"n": 1, "p": 1, "order": 2, "components": ["0"], "symbol": (1, 1)},
        "x3_plus_y2": {"n": 2, "p": 1, "order": 3, "components": ["x1^3 + x2^2"], "symbol": (2, 1, 0)},
    },
    "charts": {
        "bowl": {"n": 1, "q": 1, "expression": "x1^2 + v1^2", "box": [[-1, 1], [-1, 1]]},
        "cap": {"n": 1, "q": 1, "expression": "-x1^2 + v1^2", "box": [[-1, 1], [-1, 1]]},
        "fold": {"n": 1, "q": 1, "expression": "x1^3 - v1*x1", "box": [[-2, 2], [0, 3]]},
        "saddle": {"n": 2, "q": 0, "expression": "x1^2 - x2^2", "box": [[-1, 1], [-1, 1]]},
        "fold_model": {"n": 2, "q": 1, "expression": "x1^2 + x2^3 - v1*x2",
                       "box": [[-1, 1], [-1.5, 1.5], [0.5, 1.5]]},
        "quartic": {"n": 1, "q": 1, "expression": "x1^4 + v1*x1^2", "box": [[-1, 1], [-1, 1]]},
    },
}
