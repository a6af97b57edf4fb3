"""Central numeric tolerances.

Every threshold the library applies lives here, so a numerics audit has a
single knob per quantity.  The verification suite reports each check against
the constant named below; the CLI --tol flag (verify subcommand) overrides
them globally.
"""

# -- linalg ----------------------------------------------------------------
HERMITICITY_RTOL = 1e-8        # eigh input gate, relative to max(1, ||H||_F)
RECONSTRUCTION_TOL = 1e-10     # ||A - V diag(w) V'|| after eigh
ORTHONORMALITY_TOL = 1e-10     # ||V'V - I|| after eigh
JACOBI_SWEEP_CAP = 100
JACOBI_OFF_TOL = 1e-14         # off-diagonal cutoff, relative to ||A||_F
DIM_CAP = 64                   # largest tensor-product dimension
PARTIAL_TRACE_TOL = 1e-12
SQRT_RESIDUAL_TOL = 1e-9
OPERATOR_BASIS_GRAM_TOL = 1e-12

# -- density matrices ------------------------------------------------------
DENSITY_HERMITIAN_TOL = 1e-10
DENSITY_TRACE_TOL = 1e-10
EIGENVALUE_CLAMP = 1e-10       # eigenvalues in [-EIGENVALUE_CLAMP, 0) clamp to 0
SUPPORT_CUTOFF = 1e-12         # eigenvalue cutoff for conditional marginals

# -- monotone functions ----------------------------------------------------
F_AT_ONE_TOL = 1e-12
F_SYMMETRY_TOL = 1e-10
F0_CONSISTENCY_TOL = 1e-5      # |f(1e-12) - f0|
SPECTRUM_SUM_TOL = 1e-9
KERNEL_SYMMETRY_TOL = 1e-12

# -- scheme agreement and identities ---------------------------------------
SCHEME_AGREEMENT_TOL = 1e-9
UNITARY_INVARIANCE_TOL = 1e-10
DEGENERACY_TOL = 1e-9          # skew insensitivity to degenerate-block remixing
DEGENERATE_REMIX_TOL = 1e-8    # same, bipartite closed form
CONVEXITY_SLACK = 1e-9
PERMUTATION_TOL = 1e-10
PROP4_TOL = 1e-9
PROP5_TOL = 1e-9
PURITY_PURE_TOL = 1e-9         # "pure" means largest eigenvalue >= 1 - this

# -- MUB -------------------------------------------------------------------
MUB_CERT_TOL = 1e-10
SWAP_IDENTITY_TOL = 1e-9

# -- Monte Carlo -----------------------------------------------------------
DEFAULT_SAMPLES = 4096
MC_SIGMA_FACTOR = 4.0
MC_NOISE_FLOOR = 1e-12         # added when the integrand is identically zero
