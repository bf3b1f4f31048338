"""
Corpus surveys and chain-condition reports
==========================================

Every germ of bounded index, crossed with a finite coefficient set, tabulated
with all invariants; the value report checks the dimension bound and, for
zero boundary in dimension three, the terminal classification.
"""
from fractions import Fraction as F

from toricmld import acc_report, run_survey
from toricmld.survey import rows_to_csv

print("Surveys")
print("=" * 40)

###############################################################################
# A small two-dimensional survey
# ------------------------------

rows = run_survey(2, 6, [0])
print(f"{len(rows)} germs of index up to 6")
print(rows_to_csv(rows[:5]))

###############################################################################
# The value report
# ----------------

report = acc_report(rows)
print("distinct fixed-point values:", [str(v) for v, _ in report.values])
print("maximum:", report.maximum)
print("gaps:", [(str(a), str(b), str(g)) for a, b, g in report.gaps][:4], "...")
print("monotone-approach flags:",
      [(str(v), side, n) for v, side, n in report.accumulation_candidates]
      or "none at this corpus size")

###############################################################################
# Boundary coefficients and permutation quotient
# ----------------------------------------------

rows = run_survey(2, 3, [F(0), F(1, 2), F(1)], mod_permutations=True)
print(f"{len(rows)} orbit representatives with boundary set {{0, 1/2, 1}}")
for r in rows[:6]:
    print(" ", r.germ_id, "b =", r.boundary, "value", r.mld_point,
          "threshold", r.lct_general)

###############################################################################
# Dimension three, zero boundary
# ------------------------------
# Germs whose exceptional minimum exceeds 1 reproduce the terminal values
# 1 + 1/q; products with smooth factors fill in the rest of (1, 2).

rows = run_survey(3, 12, [0])
terminal = sorted({str(r.mld_point) for r in rows
                   if r.mld_exceptional is not None and r.mld_exceptional > 1})
print("terminal-regime values up to index 12:", terminal)
