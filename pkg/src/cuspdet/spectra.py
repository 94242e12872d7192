"""Eigenvalue lists with multiplicities."""

from dataclasses import dataclass


@dataclass(frozen=True)
class SpectrumList:
    """Strictly ascending positive eigenvalues with multiplicities.

    ``eigenvalues`` is a tuple of (lambda, multiplicity) pairs.
    """

    eigenvalues: tuple

    def __post_init__(self):
        prev = 0.0
        for lam, mult in self.eigenvalues:
            if not lam > prev:
                raise ValueError(
                    "eigenvalues must be strictly ascending and positive")
            if not (isinstance(mult, int) and mult >= 1):
                raise ValueError(f"multiplicity must be a positive integer, got {mult}")
            prev = lam

    def __len__(self):
        return len(self.eigenvalues)

    def total_count(self):
        return sum(m for _, m in self.eigenvalues)


def spectrum(pairs):
    return SpectrumList(tuple((float(l), int(m)) for l, m in pairs))
