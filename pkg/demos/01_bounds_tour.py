# # How good can a code be above capacity?
#
# Transmitting at a rate R above the channel capacity C forces errors.
# This script walks through the smallest error ratios any code can reach,
# as functions of the single number C/R.

from coding_limits import (
    OperatingPoint,
    ber_lower_bound,
    ber_prime,
    end_to_end_mi_per_bit,
    fer_lower_bound,
    fer_lower_bound_asymptotic,
    max_rate_for_tolerated_ber,
    max_rate_for_tolerated_fer,
)

# ## Bit errors
#
# With C/R = 0.5 half of every information bit has to be "lost". The
# best a code can do is a BER whose binary entropy equals that loss.

op = OperatingPoint(capacity=0.5, rate=1.0)
print("C/R =", op.ratio)
print("minimum BER      :", round(ber_lower_bound(op), 6))

# A scheme that keeps half of the frames perfect and scrambles the other
# half gets the same mutual information but a much worse BER:

print("BER of that split:", ber_prime(op))

# ## Frame errors
#
# For k-bit frames the floor rises with k and tends to 1 - C/R.

for k in (1, 8, 64, 512, 4096):
    print(f"k = {k:5d}   minimum FER = {fer_lower_bound(op, k):.6f}")
print("k -> inf     minimum FER =", fer_lower_bound_asymptotic(op))

# ## Turning it around
#
# Given a tolerated error ratio, how fast may we send over a channel of
# capacity 0.5?

for ber_t in (0.0, 0.01, 0.05, 0.11):
    print(f"BER_T = {ber_t:<5} -> R <= {max_rate_for_tolerated_ber(0.5, ber_t):.4f}")
for fer_t in (0.0, 0.1, 0.5):
    print(f"FER_T = {fer_t:<5} -> R <= {max_rate_for_tolerated_fer(0.5, fer_t):.4f}")

# Mutual information per bit never exceeds C/R, whatever the scheme:

print("I(U; U_hat)/k <=", end_to_end_mi_per_bit(op))
