# # Minimum frame error ratio against block length
#
# Longer frames cannot escape the frame error floor: above capacity the
# minimum FER grows with k. This script prints the curve family for
# C/R = 0.1 ... 0.9 and writes it as CSV for plotting elsewhere.

import sys

from coding_limits.cli import curve_rows, format_csv, log_k_grid

ks = log_k_grid(10_000)
rows = curve_rows("fer_vs_k", k_values=ks)

# One column per C/R, one line per k. The CSV stores R/C in the rate column.

ratios = sorted({round(1 / r[3], 12) for r in rows})
print("     k  " + "".join(f"{r:>8.1f}" for r in ratios))
table = {(round(1 / r[3], 12), r[2]): r[4] for r in rows}
for k in ks:
    print(f"{k:6d}  " + "".join(f"{table[(r, k)]:8.4f}" for r in ratios))

# Pass a path to save the CSV.

if len(sys.argv) > 1:
    with open(sys.argv[1], "w", encoding="utf-8", newline="") as fh:
        fh.write(format_csv(rows))
    print("wrote", sys.argv[1])
