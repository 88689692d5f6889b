"""Three non-Yrrap bases whose integer sets behave badly in different ways.

    python3 demos/odd_bases.py

Each base is the root of a series built from an infinite digit sequence; the
roots are certified by interval refinement, not by a polynomial.
"""
from negbeta import named_context, named_sequence
from negbeta.diagnostics import (decay_witnesses, large_gap_witnesses, letter_window_gaps,
                                 small_gap_witnesses)
from negbeta.pointset import derive_gap_morphism
from negbeta.sequences import SIGMA1

shrinking = named_context("prop11")
print("prop11: digits", " ".join(map(str, named_sequence("prop11").prefix(16))), "...")
print("  beta ~", shrinking.beta.decimal(20))
for w in small_gap_witnesses(shrinking, (1, 2, 3, 4)):
    print(f"  k={w.k}: gap {w.gap.decimal(8)} < {w.bound.decimal(8)}   factor {w.factor}")
g = derive_gap_morphism(shrinking, max_letters=64)
print(f"  gap alphabet still open after {len(g.words)} letters")

decaying = named_context("prop12")
print("\nprop12: orbit points creep toward 0, yet gaps stay >= 1")
for w in decay_witnesses(decaying, named_sequence("prop12"), SIGMA1, (1, 2, 3)):
    print(f"  t_{w.n} = {w.t.decimal(10)}")
summary = letter_window_gaps(decaying, -5000, 4999)
print(f"  over {summary.letters} letters: min gap {summary.min_gap.decimal(6)}, "
      f"max gap {summary.max_gap.decimal(6)}")

growing = named_context("prop13")
print("\nprop13: gaps grow without bound")
for w in large_gap_witnesses(growing, ks=(1, 2, 3)):
    print(f"  level {w.level:>2}: largest gap in window {w.window_max_gap.decimal(6)}")
