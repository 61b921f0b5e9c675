"""Constants and configuration values for rackforge."""

from enum import IntEnum


# Search and closure budgets
DEFAULT_MORPHISM_BUDGET = 10 ** 7       # candidate image assignments
DEFAULT_CLOSURE_BUDGET = 10 ** 6        # permutation group order cap
DEFAULT_EQUIVALENCE_BUDGET = 10 ** 6    # product of fiber orders
DEFAULT_IDEAL_BUDGET_BITS = 20          # 2**bits orbit unions

# Floating-point tolerances
EXACT_TOLERANCE = 1e-12       # single algebraic identities
COMPOSED_TOLERANCE = 1e-9     # nested expressions (distributivity)
UNIT_NORM_TOLERANCE = 1e-12

# Numeric harness
DEFAULT_SEED = 0
DEFAULT_TRIALS = 10 ** 4

# File formats
FORMAT_VERSION = 1
RACK_MAGIC = "rackforge-rack"
MODULE_MAGIC = "rackforge-module"
EXTENSION_MAGIC = "rackforge-extension"

# Catalog lookup
CATALOG_ENV_VAR = "RACKFORGE_CATALOG"
CATALOG_DIRNAME = "catalog"


class ExitCode(IntEnum):
    """Process exit status of the command-line tool."""
    OK = 0
    VALIDATION_FAILURE = 2
    BUDGET_EXCEEDED = 3
    PARSE_ERROR = 4
    IO_ERROR = 5
    USAGE_ERROR = 6
