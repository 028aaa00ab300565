# Lab Constants

# Report format
REPORT_SCHEMA_VERSION = "1.0"
REPORT_FORMATS = ("json", "csv", "md")
FLOAT_DIGITS = 6  # fixed rounding for every float in a report

# Exit codes
EXIT_IDENTIFIED = 0
EXIT_FAILED = 1          # separation battery had a failing experiment
EXIT_CONVERGED_WRONG = 3
EXIT_BUDGET_EXHAUSTED = 4

# Verifier strategies
RANDOM_STRATEGY_WINDOW = 16   # seeded-random picks among this many smallest witnesses
DEFAULT_DESCENDING_CAP = 64

# Filter adapters
EXCISION_BUDGET = 100_000

# Transcripts
SHUFFLE_BLOCK = 16  # infinite sources are shuffled block by block

# Learner state encoding
SLOT_BYTES = 8
LOSSY_WINDOW = 3
PB_FIRST_BOUND_EXPONENT = 2

# Finite lab limits
VC_DOMAIN_LIMIT = 16
TD_CONCEPT_LIMIT = 4096
MINCEX_DOMAIN_LIMIT = 20
SET_COVER_SET_LIMIT = 20

# Verifier names (CLI)
VERIFIER_NAMES = ["check", "mincheck", "bcheck:B", "hcheck"]

# Family ids
FAMILY_NOTCB = "notcb"
FAMILY_NOTPB = "notpb"
FAMILY_PB = "pb"
FAMILY_CBNOTPB = "cbnotpb"
FAMILY_NOTCB_TAILS = "notcb-tails"
FAMILY_IDS = [
    FAMILY_NOTCB,
    FAMILY_NOTPB,
    FAMILY_PB,
    FAMILY_CBNOTPB,
    FAMILY_NOTCB_TAILS,
]

# Separation battery (id -> version); bump a version when an experiment changes
EXPERIMENT_VERSIONS = {
    "E1": "1.1",
    "E2": "1.0",
    "E3": "1.1",
    "E4": "1.0",
    "E5": "1.0",
    "E6": "1.0",
    "E7": "1.1",
    "E8": "1.0",
    "E9": "1.0",
    "F1": "1.0",
    "F2": "1.0",
    "F3": "1.0",
    "F4": "1.0",
}
