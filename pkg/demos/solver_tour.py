"""Recover a base from its digit sequence, and see when the answer lies.

    python3 demos/solver_tour.py
"""
from negbeta import (BetaContext, named_sequence, parse_sequence, residual, solve_beta,
                     validate_admissibility, validate_expansion)

for literal in ["(2 1)^", "(3)^", "3 (0 1)^", "2 (1 0)^"]:
    seq = parse_sequence(literal)
    beta = solve_beta(seq)
    report = validate_admissibility(seq)
    ok = validate_expansion(seq, beta)
    print(f"{literal:>10}  ->  {beta}")
    print(f"{'':>14}{report.summary()}")
    if not ok:
        print(f"{'':>14}not the expansion: actual digits start",
              " ".join(map(str, BetaContext(beta).digits(8))))

# infinite, non-periodic input is solved by bisection on certified enclosures
seq = named_sequence("prop13")
beta = solve_beta(seq)
lo, hi = beta.current_bracket
print(f"\nprop13 root in an interval of width {float(hi - lo):.1e}")
print(f"series residual bound {float(residual(seq, beta).bound):.1e}")
