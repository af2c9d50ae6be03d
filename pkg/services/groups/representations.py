"""
Torus-restricted weight data and finite-class eigenphase data of representations.
"""
from dataclasses import dataclass
from functools import reduce
from math import comb, gcd
from typing import Callable, List, Tuple

from shared.exceptions import IncompatibleRepError, SpecError, UnsupportedGroupError
from shared.models.group_models import (
    ClassDatum,
    FiniteGroup,
    GroupSpec,
    ProductGroup,
    SpecialUnitaryGroup,
    TorusGroup,
    UnitaryGroup,
    describe_group,
)
from shared.models.rep_models import (
    DirectSum,
    Dual,
    Exterior,
    ExternalTensor,
    FiniteGiven,
    Regular,
    RepSpec,
    Std,
    Symmetric,
    Tensor,
    TorusWeights,
    describe_rep,
)
from services.lattice import (
    WeightPoly,
    add,
    dualize,
    elementary_expansion,
    external_product,
    multiply,
)


@dataclass(frozen=True)
class TorusWeightData:
    """Restriction of V to a maximal torus: a genuine character of Z^rank."""

    rank: int
    weights: WeightPoly

    @property
    def dim(self) -> int:
        return self.weights.coefficient_sum()


def _atom_name(rep: RepSpec) -> str:
    return type(rep).__name__


def rep_dimension(group: GroupSpec, rep: RepSpec) -> int:
    """Dimension of every node, checked positive."""
    dim = _dimension(group, rep)
    if dim <= 0:
        raise SpecError(
            f"Representation {describe_rep(rep)} of {describe_group(group)} has dimension {dim}",
            {"node": describe_rep(rep), "dimension": dim},
        )
    return dim


def _dimension(group: GroupSpec, rep: RepSpec) -> int:
    if isinstance(rep, ExternalTensor):
        if not isinstance(group, ProductGroup) or len(rep.legs) != len(group.factors):
            raise IncompatibleRepError(
                "ExternalTensor needs one leg per product factor",
                {"group": describe_group(group)},
            )
        dims = [rep_dimension(f, leg) for f, leg in zip(group.factors, rep.legs)]
        return reduce(lambda x, y: x * y, dims, 1)
    if isinstance(group, ProductGroup):
        raise IncompatibleRepError(
            "Representations of product groups must be an ExternalTensor at the root",
            {"atom": _atom_name(rep)},
        )

    if isinstance(rep, Std):
        if not isinstance(group, (UnitaryGroup, SpecialUnitaryGroup)):
            raise IncompatibleRepError(
                f"Std is defined for U(n)/SU(n), not {describe_group(group)}"
            )
        return group.n
    if isinstance(rep, TorusWeights):
        if not isinstance(group, TorusGroup) or len(rep.weights[0]) != group.rank:
            raise IncompatibleRepError(
                f"Torus weights of rank {len(rep.weights[0])} do not fit {describe_group(group)}"
            )
        return len(rep.weights)
    if isinstance(rep, FiniteGiven):
        if not isinstance(group, FiniteGroup):
            raise IncompatibleRepError(f"'given' needs a finite group, got {describe_group(group)}")
        return group.dim
    if isinstance(rep, Regular):
        if not isinstance(group, FiniteGroup):
            raise IncompatibleRepError(f"'regular' needs a finite group, got {describe_group(group)}")
        return group.order
    if isinstance(rep, Dual):
        return rep_dimension(group, rep.of)
    if isinstance(rep, DirectSum):
        return sum(rep_dimension(group, t) for t in rep.terms)
    if isinstance(rep, Tensor):
        return reduce(lambda x, y: x * y, (rep_dimension(group, f) for f in rep.factors), 1)
    if isinstance(rep, Exterior):
        return comb(rep_dimension(group, rep.of), rep.k)
    if isinstance(rep, Symmetric):
        d = rep_dimension(group, rep.of)
        return comb(d + rep.k - 1, rep.k)
    raise SpecError(f"Unknown representation node {_atom_name(rep)}")


def validate_pair(group: GroupSpec, rep: RepSpec) -> int:
    """Check that rep fits group; returns dim V."""
    return rep_dimension(group, rep)


# Torus restriction


def _functorial(
    rep: RepSpec,
    atom: Callable[[RepSpec], WeightPoly],
) -> WeightPoly:
    if isinstance(rep, Dual):
        return dualize(_functorial(rep.of, atom))
    if isinstance(rep, DirectSum):
        return reduce(add, (_functorial(t, atom) for t in rep.terms))
    if isinstance(rep, Tensor):
        return reduce(multiply, (_functorial(f, atom) for f in rep.factors))
    if isinstance(rep, Exterior):
        return elementary_expansion(_functorial(rep.of, atom), rep.k)
    if isinstance(rep, Symmetric):
        return elementary_expansion(_functorial(rep.of, atom), rep.k, symmetric=True)
    return atom(rep)


def _connected_atom(group: GroupSpec) -> Callable[[RepSpec], WeightPoly]:
    def atom(rep: RepSpec) -> WeightPoly:
        if isinstance(rep, Std) and isinstance(group, (UnitaryGroup, SpecialUnitaryGroup)):
            n = group.n
            return WeightPoly.from_weights(
                n, [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
            )
        if isinstance(rep, TorusWeights) and isinstance(group, TorusGroup):
            if len(rep.weights[0]) != group.rank:
                raise IncompatibleRepError(
                    f"Torus weights of rank {len(rep.weights[0])} do not fit {describe_group(group)}"
                )
            return WeightPoly.from_weights(group.rank, rep.weights)
        raise IncompatibleRepError(
            f"Atom {_atom_name(rep)} is incompatible with {describe_group(group)}",
            {"atom": _atom_name(rep), "group": describe_group(group)},
        )

    return atom


def torus_restriction(group: GroupSpec, rep: RepSpec) -> TorusWeightData:
    """
    Weights of V on the maximal torus.

    Conventions: Torus(r) -> Z^r; U(n) -> Z^n with Std weights e_1..e_n;
    SU(n) -> the same Z^n, the all-ones direction being null on SU(n) (the
    moments engine sums over det^k isotypic parts). Product groups take the
    concatenated lattice of their factors.
    """
    dim = rep_dimension(group, rep)

    if isinstance(group, FiniteGroup):
        raise UnsupportedGroupError(
            f"{describe_group(group)} has no positive-dimensional maximal torus"
        )
    if isinstance(group, ProductGroup):
        assert isinstance(rep, ExternalTensor)
        legs = [torus_restriction(f, leg) for f, leg in zip(group.factors, rep.legs)]
        weights = reduce(external_product, (leg.weights for leg in legs))
        data = TorusWeightData(rank=weights.rank, weights=weights)
    else:
        weights = _functorial(rep, _connected_atom(group))
        data = TorusWeightData(rank=weights.rank, weights=weights)

    if data.dim != dim or not data.weights.is_nonnegative():
        raise SpecError(
            "Weight multiplicities do not sum to dim V",
            {"weights_sum": data.dim, "dimension": dim},
        )
    return data


def rep_degree(group: GroupSpec, rep: RepSpec) -> int:
    """Common total degree of all weights of a homogeneous U(n) representation."""
    data = torus_restriction(group, rep)
    degrees = data.weights.degrees()
    if len(degrees) != 1:
        raise SpecError(
            f"{describe_rep(rep)} is not homogeneous: weight degrees {degrees}",
            {"degrees": degrees},
        )
    return degrees[0]


# Finite class data


def class_order(datum: ClassDatum, modulus: int) -> int:
    """Order of a class element, read off its (faithful) eigenphases."""
    order = 1
    for e in datum.exponents:
        k = modulus // gcd(e, modulus)
        order = order * k // gcd(order, k)
    return order


def _regular_exponents(group: FiniteGroup, datum: ClassDatum) -> List[int]:
    k = class_order(datum, group.modulus)
    step = group.modulus // k
    copies = group.order // k
    return sorted(t * step for t in range(k) for _ in range(copies))


def _expand(poly: WeightPoly, modulus: int) -> List[int]:
    out: List[int] = []
    for (e,), mult in poly.items():
        out.extend([e % modulus] * mult)
    return sorted(out)


def _class_exponents(group: FiniteGroup, datum: ClassDatum, rep: RepSpec) -> List[int]:
    m = group.modulus
    if isinstance(rep, FiniteGiven):
        return list(datum.exponents)
    if isinstance(rep, Regular):
        return _regular_exponents(group, datum)
    if isinstance(rep, Dual):
        return sorted((-e) % m for e in _class_exponents(group, datum, rep.of))
    if isinstance(rep, DirectSum):
        return sorted(e for t in rep.terms for e in _class_exponents(group, datum, t))
    if isinstance(rep, Tensor):
        parts = [_class_exponents(group, datum, f) for f in rep.factors]
        return sorted(
            reduce(lambda xs, ys: [(x + y) % m for x in xs for y in ys], parts)
        )
    if isinstance(rep, (Exterior, Symmetric)):
        inner = _class_exponents(group, datum, rep.of)
        poly = WeightPoly.from_weights(1, [(e,) for e in inner])
        expanded = elementary_expansion(poly, rep.k, symmetric=isinstance(rep, Symmetric))
        return _expand(expanded, m)
    raise IncompatibleRepError(
        f"Atom {_atom_name(rep)} is incompatible with finite group {describe_group(group)}"
    )


def finite_rep_classes(group: FiniteGroup, rep: RepSpec) -> FiniteGroup:
    """
    Class data of a derived representation.

    Dual negates exponents mod M, Tensor takes pairwise sums, Exterior(k) and
    Symmetric(k) take strictly / weakly increasing k-subset sums. Class sizes
    are unchanged.
    """
    rep_dimension(group, rep)
    if isinstance(rep, FiniteGiven):
        return group
    if isinstance(rep, Regular) and group.derived:
        raise SpecError("The regular representation needs faithful (catalog) class data")

    classes: Tuple[ClassDatum, ...] = tuple(
        ClassDatum(size=c.size, exponents=tuple(_class_exponents(group, c, rep)))
        for c in group.classes
    )
    base = group.name or f"finite[{group.order}]"
    return FiniteGroup(
        name=f"{base}:{describe_rep(rep)}",
        modulus=group.modulus,
        order=group.order,
        classes=classes,
        derived=True,
    )
