"""Package-wide defaults."""

# Default PRNG seed for every sampled verification; reports echo the
# seed actually used so runs are reproducible byte for byte.
DEFAULT_SEED = 1729
