"""
Default numerical settings for SYMPL-TK.

Every tolerance, step size and sampling knob used by the library lives
here, grouped by concern. Library functions read these as keyword
argument defaults, so a run can be tuned by editing this file or by
passing explicit arguments.
"""
from types import SimpleNamespace

# # # Tolerances
tolerances = SimpleNamespace()

# Unit-norm checks on object states and quantum points
tolerances.normalization = 1e-9

# Hermiticity of operator entries
tolerances.hermiticity = 1e-12

# Skew products at or below this are treated as 0/0
tolerances.degenerate_area = 1e-8

# Ratio gates for the verify command, per pushforward method
tolerances.ratio_analytic = 1e-6
tolerances.ratio_finite_difference = 1e-5

# Oracle gates
tolerances.jacobian = 1e-6
tolerances.bracket = 1e-9
tolerances.closed_form = 1e-12
tolerances.flow_symplectic = 1e-6
tolerances.flow_oracle = 1e-8

# Drift allowed for energy and norm over a trajectory
tolerances.conservation = 1e-8

# Density matrix checks
tolerances.purity = 1e-8
tolerances.trace = 1e-8
tolerances.weights = 1e-12

# The fixed-machine control must deviate from unity by more than this
tolerances.control_deviation = 0.1

# # # Finite differences
finite_differences = SimpleNamespace()
finite_differences.step = 1e-6

# Step for differentiating a flow map; refined by Richardson extrapolation
finite_differences.flow_step = 1e-4

# # # Integrator
integrator = SimpleNamespace()

# Fixed-point iteration of each implicit midpoint substep
integrator.tolerance = 1e-12
integrator.max_iterations = 50

# 2 for plain implicit midpoint, 4 for the triple-jump composition
integrator.order = 4

# # # Sampling
sampling = SimpleNamespace()

# Seed used when neither --seed nor the environment variable is given
sampling.default_seed = 7

# Environment variable which overrides the default seed
sampling.seed_env_var = "SYMPL_TK_SEED"

# Object states with |Re(conj(alpha) * beta)| below this are redrawn
sampling.min_area_factor = 0.05

# Give up on rejection sampling after this many draws
sampling.max_draws = 10**6

# Draws are made in vectorized batches of this size
sampling.batch_size = 1024

# Sweeps redraw tangent pairs whose initial skew product is below this
sampling.min_tangent_area = 1e-3
sampling.max_tangent_draws = 1000

# # # Ensembles
ensemble = SimpleNamespace()

# Classical positions (q, p) of the two-point initial mixture
ensemble.two_point_positions = ((1.0, 0.0), (-1.0, 0.0))
ensemble.two_point_weights = (0.5, 0.5)

# Purity at the end of a two-point run must drop below this
ensemble.mixing_threshold = 0.999

# # # Logging
logging = SimpleNamespace()
logging.level = "INFO"
logging.format = "%(asctime)s %(levelname)s %(name)s: %(message)s"

# # # Output
output = SimpleNamespace()

# 17 significant digits round-trips a double exactly
output.float_format = "%.17g"
output.csv_delimiter = ","
