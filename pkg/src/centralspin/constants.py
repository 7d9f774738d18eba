"""Unit conventions and default physical constants.

All energies are in micro-electronvolts (ueV), times in nanoseconds (ns),
magnetic fields in Tesla.  With these units every quantity in the GaAs
quantum-dot parameter regime is O(1)-O(100) and evolution phases are
E * t / HBAR_UEV_NS.
"""

# Reduced Planck constant in ueV * ns.
HBAR_UEV_NS = 0.658211951

# Bohr magneton in ueV / T.
MU_B_UEV_PER_T = 57.883818

# Box-model hyperfine coupling per nucleus for a lateral GaAs dot, ueV.
DEFAULT_A_UEV = 83.0

# Electron g-factor in GaAs.
DEFAULT_G_FACTOR = -0.44

# Largest allowed bare bath dimension (2F+1)^n for the sector fast path.
# Multiplicities stay exact (Python integers) well beyond this; the cap
# guards against accidentally huge sweeps and is configurable per call.
DEFAULT_PRODUCT_DIM_CAP = 2**24

# Largest allowed joint dimension 2*(2F+1)^n for the brute-force oracle.
ORACLE_DIM_CAP = 2 * 4096
