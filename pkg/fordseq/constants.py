"""Constants for Ford circle extraction, counting and approximation."""

# Configuration
SIEVE_LIMIT_ENV_VAR = "FORD_SIEVE_LIMIT"
DEFAULT_SIEVE_LIMIT = 10**6
MAX_SIEVE_LIMIT = 5 * 10**7

# High-precision evaluation (fractional bits carried by mpmath)
MP_PRECISION_BITS = 128

# Terms of the partial sum for A = sum mu(n) ln(n) / n^2
CONSTANT_A_TERMS = 10**7

# Smallest block used when segmenting past the sieve limit
MIN_SEGMENT_SIZE = 2**18

# Largest m for which the vectorized touch predicate stays inside int64
VECTOR_PREDICATE_MAX = 2 * 10**4

# Largest range of an exact rational sum over phi(p)/p^2 (common denominator lcm(1..s)^2)
EXACT_SUM_MAX = 2 * 10**4

# Spacing of the cardinality checkpoints in the jumps check
JUMP_CHECKPOINT = 1000

# Output formats
OUTPUT_FORMATS = ["text", "json", "csv", "svg"]
SEQUENCE_FORMATS = ["text", "json", "csv"]

# Affine line predicate modes
AFFINE_MODES = ["exact", "paper"]

# Cardinality evaluation methods
CARDINALITY_METHODS = ["exact", "mobius", "brute", "columns"]

# Approximation names, in table order
APPROXIMATIONS = ["a1", "a2", "a3"]

# Figure kinds
RENDER_KINDS = ["circles", "line", "lattice", "approx"]

RENDER_DEFAULTS = {
    "kind": "circles",
    "qmax": 12,
    "viewbox": 1000,
    "stroke_width": 1,
    "highlight_stroke_width": 2,
    "point_radius": 4,
    "curve_samples": 200,
}

VERIFY_DEFAULTS = {
    "max_m": 2000,
    "farey_max_n": 100,
    "horizontal_max_n": 50,
    "appendix_max_n": 500,
    "appendix_max_x": 10**4,
    "affine_m": 10**6,
    "affine_n": 3,
    "constant_A_terms": 10**6,
}

REPORT_DEFAULTS = {"step": 1}

# Parameter ranges (inclusive) for integer flags and node parameters
PARAMETER_RANGES = {
    "m": (1, 10**8),
    "n": (1, 10**6),
    "from": (2, 10**8),
    "to": (2, 10**8),
    "step": (1, 10**8),
    "max_m": (1, 10**5),
    "qmax": (1, 200),
}

# Exit codes
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2

# CSV columns
SEQUENCE_CSV_COLUMNS = ["p", "q", "value"]
JUMP_CSV_COLUMNS = ["m", "omega", "jump", "cardinality"]
REPORT_CSV_COLUMNS = ["m", "exact", "a1", "a2", "a3", "err1", "err2", "err3", "ratio1", "ratio2", "ratio3"]

# Output formats accepted by each command; the first entry is the default
COMMAND_FORMATS = {
    "extract": ["text", "json", "csv"],
    "farey": ["text", "json", "csv"],
    "card": ["text", "json", "csv"],
    "jumps": ["csv", "json", "text"],
    "report": ["csv", "json"],
    "render": ["svg"],
    "verify": ["text", "json"],
}

# Significant digits for approximation values in reports
REPORT_DIGITS = 15

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"
