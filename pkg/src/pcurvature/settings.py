# Settings for the pcurvature package
#
# Plain module constants. The few that make sense to tune per machine or per CI job can be
# overridden through environment variables; nothing here is required to be set.

import os

PROJECT_NAME = "pcurvature"

# Seed used by every randomized sweep (verify properties, --seed default)
DEFAULT_SEED = int(os.environ.get("PCURVATURE_SEED", "0"))

# Output format of CLI subcommands: "json" or "text"
DEFAULT_FORMAT = os.environ.get("PCURVATURE_FORMAT", "json")

# Largest characteristic accepted by the formula generator
MAX_PRIME = 101

# expand_brute enumerates 2^n words
EXPAND_BRUTE_MAX = 12

# Largest p for which numeric p-curvature matrices are computed
MATRIX_PRIME_MAX = 13

# Characteristics with an explicit vanishing-system pipeline
PIPELINE_PRIMES = (3, 5, 7)

# Logging
LOG_LEVEL = os.environ.get("PCURVATURE_LOG_LEVEL", "WARNING")
LOG_FORMAT = "%(asctime)s [%(name)s] %(levelname)s: %(message)s"

# Verification report persistence (disabled unless a SQLAlchemy URI is given,
# e.g. sqlite:///verify.db)
REPORT_DB_URI = os.environ.get("PCURVATURE_REPORT_DB_URI")
REPORT_TABLE = os.environ.get("PCURVATURE_REPORT_TABLE", "verify_report")
REPORT_BATCH_SIZE = 50

# Sample sizes of the "properties" verification suite
PROPERTY_SAMPLES = {
    "field_pairs": 1000,
    "leibniz": 100,
    "prank_sweep": 500,
    "line_bundle": 50,
    "count_p3": 50,
    "count_p5": 25,
    "count_p7": 25,
    "oracle": 50,
}

# Factor 2^(2g) counting the theta characteristics (--total)
THETA_CHARACTERISTICS = 16
