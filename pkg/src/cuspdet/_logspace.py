"""Signed log-space arithmetic helpers.

A signed log value is a pair (log|v|, sign) with sign in {-1.0, 0.0, +1.0};
sign 0.0 encodes an exact zero (the log part is then ignored).
"""

import math

NEG_INF = float("-inf")


def logaddexp(a, b):
    if a == NEG_INF:
        return b
    if b == NEG_INF:
        return a
    if a < b:
        a, b = b, a
    return a + math.log1p(math.exp(b - a))


def logsubexp(a, b):
    """log(e^a - e^b) for a > b; -inf when a == b."""
    if b == NEG_INF:
        return a
    if a == b:
        return NEG_INF
    if a < b:
        raise ValueError("logsubexp requires a >= b")
    return a + math.log1p(-math.exp(b - a))


def signed_sum(terms):
    """Sum of signed log values; returns (log|sum|, sign)."""
    pos = [la for la, s in terms if s > 0]
    neg = [la for la, s in terms if s < 0]
    lp = _logsum(pos)
    ln = _logsum(neg)
    if lp == NEG_INF and ln == NEG_INF:
        return NEG_INF, 0.0
    if lp > ln:
        return logsubexp(lp, ln), 1.0
    if ln > lp:
        return logsubexp(ln, lp), -1.0
    return NEG_INF, 0.0


def _logsum(vals):
    if not vals:
        return NEG_INF
    m = max(vals)
    if m == NEG_INF:
        return NEG_INF
    return m + math.log(sum(math.exp(v - m) for v in vals))
