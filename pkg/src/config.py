import math
import os

# Base directory (project root)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

DATA_DIR = os.path.join(BASE_DIR, "data")
LOG_DIR = os.path.join(BASE_DIR, "logs")

STANDARD_SCENARIO_PATH = os.path.join(DATA_DIR, "standard_scenario.yaml")

# Overlap factor F quadrature
F_TOL = 1e-8
F_TOL_MAX = 1e-4
F_QUAD_LIMIT = 400
F_GAUSS_HERMITE_NODES = 160

# Special functions
ERF_ARGUMENT_LIMIT = 30.0

# Brute-force oracle (unreduced rate)
ORACLE_TOL = 1e-3
ORACLE_RULE = "gk15"
ORACLE_MAX_SUBDIVISIONS = 2000
ORACLE_K_SPAN = 6.0            # half-width of the k box in units of the spectral width
ORACLE_THETA_SPAN = 12.0       # theta box edge in units of 1/(omega * smallest waist)
ORACLE_THETA_CAP = math.pi / 4

# Reduced signal formulas
SINGULAR_LOCUS_RTOL = 1e-9
CIRCULAR_RTOL = 1e-12
THETA_QUAD_LIMIT = 200
PHI_QUAD_LIMIT = 200

# Validity flags (never abort, only annotate)
PARAXIAL_MIN = 10.0
RAYLEIGH_RATIO_MIN = 10.0
OVERLAP_GAP_WARN = 0.05

# CLI
THREADS_ENV_VAR = "VB_THREADS"
ANGULAR_GRID = 64
ANGULAR_THETA_MAX_FACTOR = 3.0
