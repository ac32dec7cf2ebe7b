# Finite-difference steps
FD_STEP = 1e-5
NEWTON_FD_STEP = 1e-6

# Spectral tolerances
DEGENERACY_RTOL = 1e-9
WINDOW_ENDPOINT_TOL = 1e-9

# Newton iteration on the eigenvalue-crossing equations
NEWTON_TOL = 1e-11
NEWTON_MAX_ITER = 50
DEGENERATE_JACOBIAN_TOL = 1e-12

# Classification of B = R_{-alpha} A
CENTER_TOL = 1e-12

# An accepted ISD step whose aligned lowest eigenvector turns by more than 60 degrees
# has stepped over an eigenvalue crossing.
EIGENVECTOR_JUMP_COS = 0.5

# Relative size of the crossing discriminant below which the singular set is a line, not a point.
ISOLATED_CROSSING_RTOL = 1e-6

# Beyond this angle the predicted orbit radius is reported with a domain warning.
RADIUS_WARNING_ALPHA = 1.55

# Cycle measurement windows, in units of eps
CYCLE_BURN_IN = 50.0
CYCLE_WINDOW = 100.0
CYCLE_ESCAPE_FACTOR = 10.0

DEBUG_ENV_VAR = "DEBUG"
