"""Explicit embeddings: right-regular (Cayley), Vagner-Preston, degree padding,
and the dilation of T_n that inflates chosen H-classes inside a bigger
transformation semigroup.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import factorial

from .semigroups import FiniteSemigroup, Morphism
from .transformations import (
    PartialBijection,
    Transformation,
    all_transformations,
    rank_r_idempotent,
)


def right_regular_embedding(s: FiniteSemigroup) -> Morphism:
    """g -> (x -> x*g) into T on the element set (identity adjoined if needed).

    For a monoid the target degree is |S|; otherwise the adjoined identity is
    the extra last point, which separates elements that act identically.
    """
    n = s.size
    if s.is_monoid:
        def apply_fn(g):
            return Transformation(tuple(s.table[x][g] for x in range(n)))
    else:
        def apply_fn(g):
            return Transformation(tuple(s.table[x][g] for x in range(n)) + (g,))

    return Morphism(
        range(n),
        apply_fn,
        s.mul,
        description="right regular representation",
    )


def vagner_preston_embedding(s: FiniteSemigroup) -> Morphism:
    """x -> the partial bijection S x^-1 -> S x, t -> t*x, on the element set."""
    inv = s.inverse_map()
    if inv is None:
        raise ValueError("Vagner-Preston needs an inverse semigroup")
    n = s.size

    def apply_fn(x):
        dom = {s.table[t][inv[x]] for t in range(n)}
        return PartialBijection(
            tuple(s.table[t][x] if t in dom else None for t in range(n))
        )

    return Morphism(
        range(n),
        apply_fn,
        s.mul,
        source_inverse=lambda i: inv[i],
        target_inverse=lambda p: p.inverse(),
        description="Vagner-Preston representation",
    )


def pad_embedding(n: int, extra: int) -> Morphism:
    """T_n -> T_(n+extra): act as before on old points, fix the new ones.

    Raises the rank of every element by exactly ``extra``.
    """
    if extra < 0:
        raise ValueError("extra points must be nonnegative")

    def apply_fn(t: Transformation) -> Transformation:
        if t.degree != n:
            raise ValueError("degree mismatch")
        return Transformation(t.images + tuple(range(n, n + extra)))

    elems = all_transformations(n)
    declared = None
    if len(elems) ** 2 > 250_000:
        gens = t_n_generators(n)
        declared = [(a, b) for a in gens for b in gens]
    return Morphism(
        elems,
        apply_fn,
        lambda a, b: a * b,
        declared_pairs=declared,
        description=f"pad {n}->{n + extra}",
    )


def add_fixed_point_embedding(n: int) -> Morphism:
    """T_(n-1) -> T_n by fixing a fresh top point.

    Non-invertible maps stay non-invertible; permutations of the source land in
    the permutations of the target that fix the new point (so the image is not
    contained in the singular part; only the non-invertible slice is).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    return pad_embedding(n - 1, 1)


@dataclass
class DilationContext:
    """The blow-up T_n -> T_(X ∪ Z) used to realise group/non-group patterns.

    X is [0..n-1]; Z consists of a zero point plus the R-class of the padded
    rank-r idempotent inside T_(n+extra), and T_n acts on Z by right
    multiplication-or-zero.  Target points are ordered X first, then the zero,
    then the R-class elements sorted lexicographically by image tuple.
    """

    n: int
    r: int
    extra: int
    base_idempotent: Transformation
    padded_idempotent: Transformation
    z_elements: tuple = field(repr=False)
    z_index: dict = field(repr=False)

    @property
    def zero_point(self) -> int:
        return self.n

    @property
    def degree(self) -> int:
        return self.n + 1 + len(self.z_elements)

    @property
    def h_size(self) -> int:
        return factorial(self.r + self.extra)

    def pad(self, alpha: Transformation) -> Transformation:
        return Transformation(
            alpha.images + tuple(range(self.n, self.n + self.extra))
        )

    def act(self, gamma: Transformation, alpha: Transformation):
        """Right action of alpha on an R-class element; None encodes the zero."""
        prod = gamma * self.pad(alpha)
        return prod if prod.rank == self.r + self.extra else None

    def z_point(self, gamma) -> int:
        return self.zero_point if gamma is None else self.n + 1 + self.z_index[gamma]

    def psi(self, alpha: Transformation) -> Transformation:
        """The dilated image of alpha: usual action on X, the R-class action on Z."""
        if alpha.degree != self.n:
            raise ValueError("degree mismatch")
        images = list(alpha.images)
        images.append(self.zero_point)  # zero is absorbing
        for gamma in self.z_elements:
            images.append(self.z_point(self.act(gamma, alpha)))
        return Transformation(tuple(images))

    def h_set_points(self, alpha: Transformation) -> frozenset[int]:
        """Target points for the H-class {ker = ker padded idempotent, im = im padded alpha}."""
        if alpha.rank != self.r:
            raise ValueError("element must have the dilation rank")
        want = self.pad(alpha).image_set()
        return frozenset(
            self.n + 1 + k
            for k, gamma in enumerate(self.z_elements)
            if gamma.image_set() == want
        )

    def predicted_image(self, alpha: Transformation) -> frozenset[int]:
        """im(psi(alpha)) for rank-r alpha: the old image, the inflated H-class, and zero."""
        return (
            frozenset(alpha.images) | self.h_set_points(alpha) | {self.zero_point}
        )

    def psi_morphism(self, sample_pairs: int = 300, seed: int = 0) -> Morphism:
        """psi as a checkable morphism; large n declares generator/sample pairs."""
        elems = all_transformations(self.n)
        declared = None
        if len(elems) ** 2 > 250_000:
            rng = random.Random(seed)
            gens = t_n_generators(self.n)
            declared = [(a, b) for a in gens for b in gens]
            declared += [
                (rng.choice(elems), rng.choice(elems)) for _ in range(sample_pairs)
            ]
        return Morphism(
            elems,
            self.psi,
            lambda a, b: a * b,
            declared_pairs=declared,
            description=f"dilation of T_{self.n} at rank {self.r}",
        )


def t_n_generators(n: int) -> list[Transformation]:
    """The classical three generators of T_n: a transposition, an n-cycle, a collapse."""
    if n < 2:
        return [Transformation.identity(max(n, 1))]
    swap = list(range(n))
    swap[0], swap[1] = swap[1], swap[0]
    cycle = [(i + 1) % n for i in range(n)]
    collapse = list(range(n))
    collapse[-1] = 0
    return [Transformation(tuple(x)) for x in (swap, cycle, collapse)]


def minimal_padding(n: int, r: int) -> int:
    """Smallest number of fresh points making the inflated H-class beat n+1."""
    extra = 1
    while factorial(r + extra) <= n + 1:
        extra += 1
    return extra


def build_dilation(
    n: int, r: int, idempotent: Transformation | None = None
) -> DilationContext:
    """Set up the dilation for degree n and rank 1 < r < n.

    The fresh point count is minimal with (r+extra)! > n+1; the base idempotent
    defaults to the canonical one (identity on the first r points, the rest
    collapsed), and any rank-r idempotent may be supplied instead.
    """
    if n < 3 or not 1 < r < n:
        raise ValueError("need n >= 3 and 1 < r < n")
    e = idempotent if idempotent is not None else rank_r_idempotent(n, r)
    if e.degree != n or e.rank != r or not e.is_idempotent():
        raise ValueError("supplied element is not a rank-r idempotent of degree n")
    extra = minimal_padding(n, r)
    padded = Transformation(e.images + tuple(range(n, n + extra)))
    blocks = padded.kernel_blocks()
    m = n + extra
    z_elems = []
    for assignment in itertools.permutations(range(m), len(blocks)):
        images = [0] * m
        for block, value in zip(blocks, assignment):
            for x in block:
                images[x] = value
        z_elems.append(Transformation(tuple(images)))
    z_elems.sort(key=lambda t: t.images)
    return DilationContext(
        n=n,
        r=r,
        extra=extra,
        base_idempotent=e,
        padded_idempotent=padded,
        z_elements=tuple(z_elems),
        z_index={g: k for k, g in enumerate(z_elems)},
    )


def h_sets_disjoint(ctx: DilationContext, a: Transformation, b: Transformation) -> bool:
    """Whether the inflated H-class point sets of two rank-r elements are disjoint.

    They coincide exactly when the images coincide, and are disjoint otherwise.
    """
    if a.rank != ctx.r or b.rank != ctx.r:
        raise ValueError("rank mismatch")
    return not (ctx.h_set_points(a) & ctx.h_set_points(b))
