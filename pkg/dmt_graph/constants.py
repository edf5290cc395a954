"""Constants for the dmt-graph reconstruction pipeline."""

# Cell dimensions
DIM_VERTEX = 0
DIM_EDGE = 1
DIM_SQUARE = 2

# Edge orientations (dim-1 cells only)
ORIENT_NONE = 0
ORIENT_HORIZONTAL = 1
ORIENT_VERTICAL = 2

# Partner value of a critical cell in a discrete vector field
CRITICAL = -1

# Default noise model values (the acceptance fixtures use these)
DEFAULT_BETA1 = 10.0
DEFAULT_BETA2 = 4.0
DEFAULT_NU = 1.0
DEFAULT_OMEGA_IN_SPACINGS = 3.0
DEFAULT_DELTA = 2.0

# Geometry tolerances (world units)
EMBEDDING_TOLERANCE = 1e-9

# Generator preconditions
MAX_SPACING_PER_OMEGA = 0.5

# Hausdorff sampling: default resolution is spacing / 4
DEFAULT_RESOLUTION_PER_SPACING = 0.25

# KDE kernel truncation radius, in bandwidths
KDE_TRUNCATION_BANDWIDTHS = 4.0

# Oracle refuses complexes larger than this (column reduction is cubic)
ORACLE_MAX_CELLS = 20_000

# Noise modes for synthetic densities
NOISE_MODE_UNIFORM = "uniform"
NOISE_MODE_HIGH = "high"
NOISE_MODE_LOW = "low"
NOISE_MODE_CHECKER = "checker"
NOISE_MODES = (NOISE_MODE_UNIFORM, NOISE_MODE_HIGH, NOISE_MODE_LOW, NOISE_MODE_CHECKER)

# DGRID v1 density file
DGRID_MAGIC = "DGRID"
DGRID_VERSION = 1
DGRID_SIGNIFICANT_DIGITS = 17

# Persistence diagram CSV
DIAGRAM_CSV_HEADER = "dim,birth_value,death_value,persistence,birth_cell,death_cell"
INFINITY_TOKEN = "inf"

# CLI exit codes
EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_ERROR = 2

# SVG rendering
SVG_TRUTH_STROKE = "#d62728"
SVG_RECON_STROKE = "#2ca02c"
SVG_NODE_FILL = "#1f77b4"
SVG_PIXELS_PER_SPACING = 8.0
