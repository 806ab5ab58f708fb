# # Simulating the schemes that reach the bounds
#
# Each model below is an end-to-end channel from source frame to decided
# frame. At the operating point it is built for, its statistics meet one
# of the bounds, and the checker confirms that none is violated.

from coding_limits import OperatingPoint, inv_binary_entropy
from coding_limits.dmc import msc_mi_per_bit
from coding_limits.endchan import (
    BlockErasure,
    Bsc,
    FritchmanBurst,
    MarySymmetric,
    simulate,
    simulate_fritchman_stream,
    verify_against_bounds,
)

frames = 100_000

# ## Memoryless bit errors: the minimum BER at C/R = 0.5

p = inv_binary_entropy(0.5)
r = simulate(Bsc(p), 64, frames, seed=1)
print(f"BSC      BER {r.empirical_ber:.4f}  FER {r.empirical_fer:.4f}")
print("         verified:", verify_against_bounds(r, OperatingPoint.from_ratio(0.5)).passed)

# ## Whole wrong frames: the minimum FER for 16-bit frames

ratio = msc_mi_per_bit(16, 0.2)
r = simulate(MarySymmetric(16, 0.2), 16, frames, seed=1)
print(f"M-SC     FER {r.empirical_fer:.4f}  BER in bad frames {r.conditional_burst_ber:.4f}")
print(f"         MI/bit {r.frame_mi_per_bit_estimate:.4f} at C/R {ratio:.4f}")

# ## Erased frames: BER is exactly half the FER

r = simulate(BlockErasure(64, 0.3), 64, frames, seed=1)
print(f"erasure  BER {r.empirical_ber:.4f}  FER {r.empirical_fer:.4f}")

# ## Bursts: the capacity approaches 1 - 2 BER as bursts get long

for length in (10, 100, 1000):
    s = simulate_fritchman_stream(FritchmanBurst.from_ber(0.05, length), 5_000_000, seed=1)
    print(f"burst length {length:5d}: capacity estimate {s.capacity_estimate:.4f}")
