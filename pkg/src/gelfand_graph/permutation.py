"""
Permutations of {1, ..., n} in one-line notation and the fixed-point-free
involutions F_n that form the vertex set of the Gelfand graph.

Everything here is 1-based, like the mathematics: ``Permutation((2, 1, 4, 3))``
sends 1 -> 2, 2 -> 1, 3 -> 4, 4 -> 3.

>>> z = FpfInvolution.parse("2143")
>>> conj_simple(z, 2)
FpfInvolution('3412')
>>> [str(x) for x in enumerate_fpf(4)]
['2143', '3412', '4321']
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Permutation", "FpfInvolution", "Reflection",
    "identity", "simple", "compose", "inverse", "length", "height",
    "conj_simple", "conj_reflection", "reflections", "enumerate_fpf",
    "longest_element", "minimal_fpf", "double_factorial",
]


def _render(image: Sequence[int]) -> str:
    # single digits are concatenated ("3412"); larger n needs separators
    if len(image) <= 9:
        return "".join(str(a) for a in image)
    return ",".join(str(a) for a in image)


@dataclass(frozen=True, slots=True, eq=False, repr=False)
class Permutation:
    """A permutation of {1..n} stored by its one-line notation."""

    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(a) for a in self.image)
        object.__setattr__(self, "image", image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise ValueError(f"not a permutation of 1..{len(image)}: {image}")

    @classmethod
    def parse(cls, text: str):
        """Parse ``"3412"`` or ``"3,4,1,2"`` (commas or spaces needed for n > 9)."""
        text = text.strip()
        if "," in text or " " in text:
            parts = [p for p in text.replace(",", " ").split()]
            return cls(tuple(int(p) for p in parts))
        if not text.isdigit():
            raise ValueError(f"cannot parse permutation {text!r}")
        return cls(tuple(int(c) for c in text))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i - 1]

    def __str__(self) -> str:
        return _render(self.image)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"

    # equality is by one-line notation, so an FpfInvolution equals the
    # Permutation with the same image
    def __eq__(self, other):
        if isinstance(other, Permutation):
            return self.image == other.image
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.image)

    def __lt__(self, other: "Permutation") -> bool:
        return self.image < other.image

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)


@dataclass(frozen=True, slots=True, eq=False, repr=False)
class FpfInvolution(Permutation):
    """A fixed-point-free involution z of S_n (n even)."""

    def __post_init__(self):
        Permutation.__post_init__(self)
        image = self.image
        n = len(image)
        if n == 0 or n % 2:
            raise ValueError(f"FPF involutions need even positive n, got n={n}")
        for i, a in enumerate(image, start=1):
            if a == i:
                raise ValueError(f"{_render(image)} fixes {i}")
            if image[a - 1] != i:
                raise ValueError(f"{_render(image)} is not an involution")
        # sign(z) = (-1)^(n/2) = (-1)^length, so the parity of the length is forced
        if (_inversions(image) - n // 2) % 2:
            raise AssertionError(f"length parity violated for {_render(image)}")

    def pairs(self) -> list[tuple[int, int]]:
        """The 2-cycles (i, z(i)) with i < z(i)."""
        return [(i, a) for i, a in enumerate(self.image, start=1) if i < a]


@dataclass(frozen=True, slots=True)
class Reflection:
    """The transposition (i j) of S_n, 1 <= i < j <= n."""

    i: int
    j: int

    def __post_init__(self):
        if not 1 <= self.i < self.j:
            raise ValueError(f"reflection needs 1 <= i < j, got ({self.i},{self.j})")

    def as_permutation(self, n: int) -> Permutation:
        if self.j > n:
            raise ValueError(f"reflection ({self.i},{self.j}) does not act on 1..{n}")
        image = list(range(1, n + 1))
        image[self.i - 1], image[self.j - 1] = self.j, self.i
        return Permutation(tuple(image))


def _inversions(image: Sequence[int]) -> int:
    n = len(image)
    return sum(1 for a in range(n) for b in range(a + 1, n) if image[a] > image[b])


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def simple(i: int, n: int) -> Permutation:
    """The simple transposition s_i = (i, i+1) in S_n."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"simple index {i} out of range 1..{n - 1}")
    return Reflection(i, i + 1).as_permutation(n)


def compose(a: Permutation, b: Permutation) -> Permutation:
    """``(a * b)(i) = a(b(i))``."""
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} != {b.n}")
    ai = a.image
    return Permutation(tuple(ai[k - 1] for k in b.image))


def inverse(w: Permutation) -> Permutation:
    inv = [0] * w.n
    for i, a in enumerate(w.image, start=1):
        inv[a - 1] = i
    return Permutation(tuple(inv))


def length(w: Permutation) -> int:
    """Coxeter length, i.e. the number of inversions."""
    return _inversions(w.image)


def height(z: FpfInvolution) -> Fraction:
    """Half the Coxeter length.

    This is a half-integer when n/2 is odd (e.g. ``height(21) == 1/2``);
    differences of heights are always integers.
    """
    return Fraction(length(z), 2)


def _conj_transposition(image: tuple[int, ...], i: int, j: int) -> tuple[int, ...]:
    # r z r for r = (i j): relabel i <-> j in every cycle
    def swap(a: int) -> int:
        return j if a == i else i if a == j else a

    out = list(image)
    out[i - 1], out[j - 1] = image[j - 1], image[i - 1]
    return tuple(swap(a) for a in out)


def conj_simple(z: FpfInvolution, i: int) -> FpfInvolution:
    """``s_i z s_i``."""
    if not 1 <= i <= z.n - 1:
        raise ValueError(f"simple index {i} out of range 1..{z.n - 1}")
    return FpfInvolution(_conj_transposition(z.image, i, i + 1))


def conj_reflection(z: FpfInvolution, r: Reflection) -> FpfInvolution:
    """``r z r`` for a transposition r."""
    if r.j > z.n:
        raise ValueError(f"reflection ({r.i},{r.j}) does not act on 1..{z.n}")
    return FpfInvolution(_conj_transposition(z.image, r.i, r.j))


def reflections(n: int) -> list[Reflection]:
    return [Reflection(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def double_factorial(m: int) -> int:
    out = 1
    while m > 1:
        out *= m
        m -= 2
    return out


def _pairings(points: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for k, partner in enumerate(rest):
        for tail in _pairings(rest[:k] + rest[k + 1:]):
            yield [(first, partner)] + tail


def _from_pairs(n: int, pairs: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    image = [0] * n
    for a, b in pairs:
        image[a - 1], image[b - 1] = b, a
    return tuple(image)


def enumerate_fpf(n: int) -> list[FpfInvolution]:
    """All (n-1)!! FPF involutions of S_n ordered by (height, one-line notation)."""
    if n < 2 or n % 2:
        raise ValueError(f"n must be even and >= 2, got {n}")
    images = [_from_pairs(n, p) for p in _pairings(list(range(1, n + 1)))]
    images.sort(key=lambda im: (_inversions(im), im))
    return [FpfInvolution(im) for im in images]


def longest_element(n: int) -> Permutation:
    """w_0 = n (n-1) ... 1."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return Permutation(tuple(range(n, 0, -1)))


def minimal_fpf(n: int) -> FpfInvolution:
    """x_1 = s_1 s_3 ... s_{n-1} = 2143...n(n-1)."""
    if n < 2 or n % 2:
        raise ValueError(f"n must be even and >= 2, got {n}")
    return FpfInvolution(_from_pairs(n, [(2 * k + 1, 2 * k + 2) for k in range(n // 2)]))
