"""Amalgams of finite semigroups: membership tests for the known amalgamation-
base criteria, joint embedding for inverse semigroups, and a capped search for
amalgam completions inside transformation or partial-bijection semigroups.

The classifier is honest: when no implemented criterion fires the verdict is
"unknown" (no full characterisation of semigroup amalgamation bases exists).
"""
from __future__ import annotations

import operator
from dataclasses import dataclass, field

from .embeddings import vagner_preston_embedding
from .errors import CapExceededError
from .green import green_classes, is_ideal_chain
from .isomorphism import find_embedding, find_isomorphism, iter_embeddings
from .semigroups import (
    FiniteSemigroup,
    Morphism,
    full_transformation_semigroup,
)
from .transformations import (
    PartialBijection,
    all_partial_bijections,
    all_transformations,
)

MEMBER = "member"
NON_MEMBER = "non-member"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class ClassVerdict:
    status: str
    reason: str

    @property
    def decided(self) -> bool:
        return self.status != UNKNOWN


def is_inverse_amalgamation_base(s: FiniteSemigroup) -> ClassVerdict:
    """Inverse semigroups: a base exactly when the principal ideals form a chain."""
    if not s.is_inverse:
        raise ValueError("expected an inverse semigroup")
    if is_ideal_chain(green_classes(s)):
        return ClassVerdict(MEMBER, "inverse-ideal-chain")
    return ClassVerdict(NON_MEMBER, "ideals-not-a-chain")


def _classify_one_sided(s: FiniteSemigroup) -> ClassVerdict:
    """The decision list without the opposite fallback."""
    green = green_classes(s)
    if not is_ideal_chain(green):
        return ClassVerdict(NON_MEMBER, "ideals-not-a-chain")
    if green.n_j == 1 and not s.is_group():
        return ClassVerdict(NON_MEMBER, "completely-simple-not-a-group")
    if s.is_group():
        return ClassVerdict(MEMBER, "finite-group")
    if s.is_inverse:
        return ClassVerdict(MEMBER, "inverse-ideal-chain")
    for k in (2, 3):
        if s.size == k**k:
            if find_isomorphism(s, full_transformation_semigroup(k), cap=27):
                return ClassVerdict(MEMBER, f"full-transformation-degree-{k}")
    return ClassVerdict(UNKNOWN, "no-criterion-fired")


def classify_semigroup_base(s: FiniteSemigroup) -> ClassVerdict:
    """First-match decision list; a decided verdict for the opposite semigroup
    transfers (the base property is self-dual)."""
    verdict = _classify_one_sided(s)
    if verdict.decided:
        return verdict
    opp = _classify_one_sided(s.opposite())
    if opp.decided:
        return ClassVerdict(opp.status, "opposite:" + opp.reason)
    return ClassVerdict(UNKNOWN, "no-criterion-fired")


def _shift_partial(p: PartialBijection, total: int, offset: int) -> PartialBijection:
    images = [None] * total
    for i, x in enumerate(p.images):
        if x is not None:
            images[i + offset] = x + offset
    return PartialBijection(tuple(images))


def joint_embedding_inverse(a1: FiniteSemigroup, a2: FiniteSemigroup):
    """Two inverse semigroups into partial bijections on the disjoint union of
    their element sets, each via its Vagner-Preston map then inclusion."""
    for s in (a1, a2):
        if not s.is_inverse:
            raise ValueError("joint embedding implemented for inverse semigroups")
    n1, n2 = a1.size, a2.size
    total = n1 + n2
    vp1 = vagner_preston_embedding(a1)
    vp2 = vagner_preston_embedding(a2)

    g1 = Morphism(
        range(n1),
        lambda x: _shift_partial(vp1(x), total, 0),
        a1.mul,
        source_inverse=lambda i: a1.inverse_map()[i],
        target_inverse=lambda p: p.inverse(),
        description="arm 1 into the joint partial-bijection semigroup",
    )
    g2 = Morphism(
        range(n2),
        lambda x: _shift_partial(vp2(x), total, n1),
        a2.mul,
        source_inverse=lambda i: a2.inverse_map()[i],
        target_inverse=lambda p: p.inverse(),
        description="arm 2 into the joint partial-bijection semigroup",
    )
    return g1, g2


@dataclass
class Amalgam:
    base: FiniteSemigroup
    arm1: FiniteSemigroup
    arm2: FiniteSemigroup
    f1: tuple  # base index -> arm1 index
    f2: tuple
    inverse_mode: bool = False

    def __post_init__(self):
        self.f1 = tuple(self.f1)
        self.f2 = tuple(self.f2)
        for name, arm, fmap in (("f1", self.arm1, self.f1), ("f2", self.arm2, self.f2)):
            if len(fmap) != self.base.size:
                raise ValueError(f"{name} must map every base element")
            if len(set(fmap)) != len(fmap):
                raise ValueError(f"{name} must be injective")
            for i in range(self.base.size):
                for j in range(self.base.size):
                    if fmap[self.base.table[i][j]] != arm.table[fmap[i]][fmap[j]]:
                        raise ValueError(f"{name} is not a homomorphism")
        if self.inverse_mode:
            binv = self.base.inverse_map()
            if binv is None:
                raise ValueError("inverse_mode needs an inverse base")
            for arm, fmap in ((self.arm1, self.f1), (self.arm2, self.f2)):
                ainv = arm.inverse_map()
                if ainv is None:
                    raise ValueError("inverse_mode needs inverse arms")
                for i in range(self.base.size):
                    if fmap[binv[i]] != ainv[fmap[i]]:
                        raise ValueError("arm embedding does not preserve inverses")


@dataclass
class Completion:
    degree: int
    kind: str  # "T" or "I"
    g1: dict = field(repr=False)  # arm1 index -> target element
    g2: dict = field(repr=False)
    verification: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return bool(self.verification.get("ok"))


ARM_SIZE_CAP = 6
DEGREE_CAP = 5


def complete_amalgam(am: Amalgam, max_degree: int = 4) -> Completion | None:
    """Search for g1, g2 into T_m (or I_m in inverse mode) with f1 g1 == f2 g2.

    Degrees are tried in increasing order; a None result means "not found
    within the cap" and is no proof that the amalgam fails."""
    if am.arm1.size > ARM_SIZE_CAP or am.arm2.size > ARM_SIZE_CAP:
        raise CapExceededError(f"arms capped at {ARM_SIZE_CAP} elements")
    if max_degree > DEGREE_CAP:
        raise CapExceededError(f"target degree capped at {DEGREE_CAP}")

    for m in range(1, max_degree + 1):
        if am.inverse_mode:
            elems = all_partial_bijections(m)
            tinv = lambda p: p.inverse()
            kind = "I"
        else:
            elems = all_transformations(m)
            tinv = None
            kind = "T"
        for g1 in iter_embeddings(
            am.arm1,
            elems,
            operator.mul,
            inverse_mode=am.inverse_mode,
            target_inverse=tinv,
        ):
            forced = {am.f2[b]: g1[am.f1[b]] for b in range(am.base.size)}
            g2 = find_embedding(
                am.arm2,
                elems,
                operator.mul,
                forced=forced,
                inverse_mode=am.inverse_mode,
                target_inverse=tinv,
            )
            if g2 is None:
                continue
            return Completion(
                degree=m,
                kind=kind,
                g1=g1,
                g2=g2,
                verification=verify_completion(am, g1, g2),
            )
    return None


def verify_completion(am: Amalgam, g1: dict, g2: dict) -> dict:
    """Independent re-check: both maps are injective homomorphisms agreeing on
    the amalgam base."""
    def is_embedding(arm, g):
        if len({g[i] for i in range(arm.size)}) != arm.size:
            return False
        return all(
            g[arm.table[i][j]] == g[i] * g[j]
            for i in range(arm.size)
            for j in range(arm.size)
        )

    agree = all(
        g1[am.f1[b]] == g2[am.f2[b]] for b in range(am.base.size)
    )
    report = {
        "arm1_embedding": is_embedding(am.arm1, g1),
        "arm2_embedding": is_embedding(am.arm2, g2),
        "base_agreement": agree,
    }
    report["ok"] = all(report.values())
    return report
