# # Error floors of BPSK over the AWGN channel
#
# Capacity of binary antipodal signalling depends on Eb/N0 and on the
# code rate. Below the Shannon threshold every code of that rate has a
# nonzero BER floor; above it the floor is zero.

from coding_limits.awgn_bpsk import (
    bound_curve,
    bpsk_awgn_capacity,
    db_grid,
    ebn0_to_esn0,
    shannon_threshold,
)

# ## Thresholds
#
# Soft-decision and hard-decision receivers for three rates:

for rate in (0.25, 0.5, 0.75):
    soft = shannon_threshold(rate)
    hard = shannon_threshold(rate, hard_decision=True)
    print(f"R = {rate:4}: threshold {soft:7.4f} dB soft, {hard:7.4f} dB hard")

# ## Curves at R = 1/2
#
# Minimum BER and the BER of the frame-splitting scheme just below the
# threshold.

grid = db_grid(-1.0, 0.4, 0.1)
ber = bound_curve(0.5, "ber", grid)
split = bound_curve(0.5, "ber-prime", grid)
print("\n Eb/N0    C      BER_min   BER'")
for a, b in zip(ber, split):
    c = bpsk_awgn_capacity(ebn0_to_esn0(a.abscissa, 0.5))
    print(f"{a.abscissa:6.2f} {c:7.4f} {a.value:9.2e} {b.value:9.2e}")
