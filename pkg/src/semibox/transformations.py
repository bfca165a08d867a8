"""Concrete elements: total transformations and partial bijections of a finite set.

Points are 0-based internally; the JSON layer, the CLI and printed forms use
1-based points.  Composition is left-to-right throughout: ``(f * g)(x) == g(f(x))``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial


@dataclass(frozen=True)
class Transformation:
    """A total map [0..n-1] -> [0..n-1], stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(x) for x in self.images))
        n = len(self.images)
        if n == 0:
            raise ValueError("degree must be positive")
        for x in self.images:
            if not 0 <= x < n:
                raise ValueError(f"image {x} out of range for degree {n}")

    @classmethod
    def identity(cls, n: int) -> "Transformation":
        return cls(tuple(range(n)))

    @classmethod
    def constant(cls, n: int, value: int = 0) -> "Transformation":
        return cls((value,) * n)

    @classmethod
    def from_one_based(cls, images) -> "Transformation":
        return cls(tuple(int(x) - 1 for x in images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def one_based(self) -> list[int]:
        return [x + 1 for x in self.images]

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Transformation") -> "Transformation":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        o = other.images
        return Transformation(tuple(o[x] for x in self.images))

    @property
    def rank(self) -> int:
        return len(set(self.images))

    def image_set(self) -> frozenset[int]:
        return frozenset(self.images)

    def kernel_blocks(self) -> tuple[tuple[int, ...], ...]:
        """Kernel partition of [0..n-1]; blocks sorted internally and by minimum."""
        by_value: dict[int, list[int]] = {}
        for i, v in enumerate(self.images):
            by_value.setdefault(v, []).append(i)
        blocks = [tuple(sorted(b)) for b in by_value.values()]
        return tuple(sorted(blocks, key=lambda b: b[0]))

    def fixed_points(self) -> frozenset[int]:
        return frozenset(i for i, v in enumerate(self.images) if i == v)

    def is_idempotent(self) -> bool:
        im = self.images
        return all(im[v] == v for v in im)

    def is_permutation(self) -> bool:
        return self.rank == self.degree

    def sort_key(self):
        return self.images

    def __str__(self) -> str:
        return "[" + " ".join(str(x + 1) for x in self.images) + "]"


@dataclass(frozen=True)
class PartialBijection:
    """A partial injective map [0..n-1] -> [0..n-1]; None marks undefined points."""

    images: tuple

    def __post_init__(self):
        object.__setattr__(
            self, "images", tuple(None if x is None else int(x) for x in self.images)
        )
        n = len(self.images)
        if n == 0:
            raise ValueError("degree must be positive")
        seen = set()
        for x in self.images:
            if x is None:
                continue
            if not 0 <= x < n:
                raise ValueError(f"image {x} out of range for degree {n}")
            if x in seen:
                raise ValueError("images of a partial bijection must be distinct")
            seen.add(x)

    @classmethod
    def identity(cls, n: int) -> "PartialBijection":
        return cls(tuple(range(n)))

    @classmethod
    def identity_on(cls, n: int, subset) -> "PartialBijection":
        s = set(subset)
        return cls(tuple(i if i in s else None for i in range(n)))

    @classmethod
    def empty(cls, n: int) -> "PartialBijection":
        return cls((None,) * n)

    @classmethod
    def from_one_based(cls, images) -> "PartialBijection":
        return cls(tuple(None if x is None else int(x) - 1 for x in images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def one_based(self) -> list:
        return [None if x is None else x + 1 for x in self.images]

    def __call__(self, point: int):
        return self.images[point]

    def __mul__(self, other: "PartialBijection") -> "PartialBijection":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        o = other.images
        return PartialBijection(
            tuple(None if x is None else o[x] for x in self.images)
        )

    def domain_set(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.images) if x is not None)

    def image_set(self) -> frozenset[int]:
        return frozenset(x for x in self.images if x is not None)

    @property
    def rank(self) -> int:
        return sum(1 for x in self.images if x is not None)

    def inverse(self) -> "PartialBijection":
        inv = [None] * self.degree
        for i, x in enumerate(self.images):
            if x is not None:
                inv[x] = i
        return PartialBijection(tuple(inv))

    def fixed_points(self) -> frozenset[int]:
        return frozenset(i for i, x in enumerate(self.images) if x == i)

    def is_idempotent(self) -> bool:
        # idempotents of I_n are exactly the partial identities
        return all(x is None or x == i for i, x in enumerate(self.images))

    def sort_key(self):
        return tuple(-1 if x is None else x for x in self.images)

    def __str__(self) -> str:
        return "[" + " ".join("-" if x is None else str(x + 1) for x in self.images) + "]"


def all_transformations(n: int) -> list[Transformation]:
    """All of T_n in lexicographic order of image tuples."""
    return [Transformation(t) for t in itertools.product(range(n), repeat=n)]


def all_partial_bijections(n: int) -> list[PartialBijection]:
    """All of I_n, ordered lexicographically with undefined sorted first."""
    out: list[PartialBijection] = []
    images: list = [None] * n
    used = [False] * n

    def rec(i: int):
        if i == n:
            out.append(PartialBijection(tuple(images)))
            return
        images[i] = None
        rec(i + 1)
        for v in range(n):
            if not used[v]:
                used[v] = True
                images[i] = v
                rec(i + 1)
                used[v] = False
        images[i] = None

    rec(0)
    return out


def transformation_count(n: int) -> int:
    return n**n


def partial_bijection_count(n: int) -> int:
    """|I_n| = sum_k C(n,k)^2 k!."""
    total = 0
    for k in range(n + 1):
        c = factorial(n) // (factorial(k) * factorial(n - k))
        total += c * c * factorial(k)
    return total


def rank_r_idempotent(n: int, r: int) -> Transformation:
    """The idempotent fixing the first r points and sending the rest to point r-1."""
    if not 1 <= r <= n:
        raise ValueError("rank out of range")
    return Transformation(tuple(i if i < r else r - 1 for i in range(n)))


def idempotent_block_form(e: Transformation) -> list[tuple[tuple[int, ...], int]]:
    """Blocks (A_i, a_i) of an idempotent, a_i in A_i, blocks sorted by minimum."""
    if not e.is_idempotent():
        raise ValueError("not an idempotent")
    return [(block, e.images[block[0]]) for block in e.kernel_blocks()]


def transformation_with_kernel(blocks, n: int) -> Transformation:
    """The map sending each point to the minimum of its block."""
    images = [None] * n
    for block in blocks:
        rep = min(block)
        for x in block:
            if images[x] is not None:
                raise ValueError("blocks overlap")
            images[x] = rep
    if any(x is None for x in images):
        raise ValueError("blocks do not cover the ground set")
    return Transformation(tuple(images))


def canonical_image_rep(n: int, image) -> Transformation:
    """A canonical transformation with the given image set: fix the image, send
    everything else to its minimum."""
    s = frozenset(image)
    if not s or not s <= frozenset(range(n)):
        raise ValueError("image must be a nonempty subset of the ground set")
    lo = min(s)
    return Transformation(tuple(i if i in s else lo for i in range(n)))
