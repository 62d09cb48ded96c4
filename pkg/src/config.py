import os

# Logging
LOG_LEVEL = os.environ.get("LOG_LEVEL", "INFO")

# Depth of the infinite j=2 sequence generated by default
PPOLY_NMAX = int(os.environ.get("PPOLY_NMAX", "8"))

# Quadrature for the orthogonality integrals
QUAD_HALF_WIDTH = float(os.environ.get("QUAD_HALF_WIDTH", "12.0"))  # integrate over [-L, L]
QUAD_REL_TOL = float(os.environ.get("QUAD_REL_TOL", "1e-11"))
QUAD_MAX_DEPTH = int(os.environ.get("QUAD_MAX_DEPTH", "200"))       # max subintervals

# Finite-difference Schrödinger solver
FD_HALF_WIDTH = float(os.environ.get("FD_HALF_WIDTH", "10.0"))
FD_GRID_POINTS = int(os.environ.get("FD_GRID_POINTS", "4000"))
FD_EIG_COUNT = int(os.environ.get("FD_EIG_COUNT", "6"))
FD_TAIL_TOL = float(os.environ.get("FD_TAIL_TOL", "1e-12"))         # e^{-L²/2}·L^m below this
FD_WIDEN_STEP = 0.5
RESIDUAL_GRID_POINTS = int(os.environ.get("RESIDUAL_GRID_POINTS", "8000"))

# Verification tolerances
EIGEN_TOL = float(os.environ.get("EIGEN_TOL", "5e-3"))     # FD eigenvalue vs exact level
RICHARDSON_TOL = 1e-3                                      # change under grid doubling
ORTHO_TOL = float(os.environ.get("ORTHO_TOL", "1e-9"))     # off-diagonal Gram, relative
NORM_TOL = float(os.environ.get("NORM_TOL", "1e-7"))       # norm ratios, relative
RESIDUAL_TOL = float(os.environ.get("RESIDUAL_TOL", "1e-4"))
GAP_MARGIN = 0.1                                           # shrink the gap by this on each side

# Exact checks in the verification suite
VERIFY_NMAX = int(os.environ.get("VERIFY_NMAX", "3"))      # j=2 levels checked exactly
NUMERIC_NMAX = 4                                           # levels in the Gram matrix

# Sampling for model / sample output
SAMPLE_XMIN = float(os.environ.get("SAMPLE_XMIN", "-8"))
SAMPLE_XMAX = float(os.environ.get("SAMPLE_XMAX", "8"))
SAMPLE_POINTS = int(os.environ.get("SAMPLE_POINTS", "1601"))

# Parallel numeric jobs (joblib n_jobs)
JOBS = int(os.environ.get("JOBS", "1"))
