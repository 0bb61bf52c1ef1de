"""
Application constants and default configuration values
"""

SCHEMA_VERSION = "hpforge/1"

CONFIG_FILE = "hpforge_config.yml"
WORKERS_ENV = "HPFORGE_WORKERS"

# Field size limits
FIELD_ORDER_LIMIT = 2 ** 20
LOG_TABLE_LIMIT = 2 ** 16
MATRIX_TABLE_LIMIT = 1024

# Verdicts and verification methods as written to certificates
HIGPIG = "HigPig"
NOT_HIGPIG = "NotHigPig"
STRONG_SCAN = "StrongBlockingScan"
TRANSVERSAL_SCAN = "TransversalScan"

METHODS = ["auto", "strong", "transversal"]

# Construction names accepted by the construct command
CONSTRUCTION_NAMES = [
    "pg3_four_lines",
    "pg4_six_lines",
    "pg4_six_planes",
    "pg5_seven_lines",
    "pg5_seven_solids",
    "pg5_eight_planes",
    "tetrahedron",
    "subline_triples",
    "seven_planes_spread",
]

CODES_SUBCOMMANDS = ["minimality", "covering-radius", "saturating", "bounds"]

DEFAULT_SEED = 20240601

DEFAULT_CONFIG = {
    "workers": 1,
    "scan": {
        "chunk_size": 20000,
        "pruning": "auto",
    },
    "budgets": {
        "search_trials": 1000000,
        "minimality_codewords": 2 ** 24,
        "syndromes": 2 ** 24,
        "saturation_work": 400000000,
        "resolving_vertices": 200000,
        "six_lines_choices": 64,
    },
    "search": {
        "log_every": 1000,
        "batch_size": 16,
    },
    "report": {
        "q_list": [2, 3],
        "attach_instances_max_q": 5,
        "oracle_samples": 500,
    },
    "logging": {
        "level": "INFO",
    },
}

# Command exit codes
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INPUT_ERROR = 2

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
