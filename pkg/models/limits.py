"""Hard caps on tree depths and experiment sizes.

The sub-slot count of slot k is 2^k, so every tree operation is exponential in
its horizon; these caps keep single calls within desk-scale time and memory.
"""

# Sub-slot indices are stored in unsigned 64-bit words.
MAX_SLOT = 62

# ml_window_decode visits Θ(2^{n+1}) nodes.
MAX_WINDOW_HORIZON = 28

# exhaustive_decode materialises all 2^n leaf metrics.
MAX_EXHAUSTIVE_HORIZON = 16

# anytime_estimates runs one window decode per horizon 1..n.
MAX_ANYTIME_HORIZON = 24

# genie_suffix_error runs two subtree passes of 2^{d+1} nodes.
MAX_GENIE_DELAY = 26

# Depth (in bits) of the unit-cost burst tree: delay + burst length.
MAX_BURST_TREE_BITS = 26

# run_block_baseline draws M values per trial.
MAX_BLOCK_MESSAGES = 2 ** 20
