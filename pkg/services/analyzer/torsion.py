"""
Torsion approximants of groups with a central torus and their agreement degree.
"""
from itertools import product as cartesian
from typing import List, Optional, Tuple

from shared.exceptions import AlreadySemisimpleError, SpecError
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
from shared.models.rep_models import ExternalTensor, FiniteGiven, RepSpec, describe_rep
from shared.models.report_models import CellAgreement, TorsionAgreementReport, TorsionApproximant
from shared.models.schemas import Norm
from shared.utils.logging import logger
from services.groups.representations import rep_degree, torus_restriction
from services.moments.engine import MomentEngine
from services.analyzer.config import config
from services.analyzer.separation import cells_at_norm


def _torsion_classes(group: GroupSpec, rep: RepSpec, n: int) -> FiniteGroup:
    """
    (Z/n)^r inside Torus(r): class c carries exponents <w, c> mod n, one per
    basis line of weight w.
    """
    data = torus_restriction(group, rep)
    lines = [w for w, mult in data.weights.items() for _ in range(mult)]
    classes = tuple(
        ClassDatum(
            size=1,
            exponents=tuple(sum(x * y for x, y in zip(w, c)) % n for w in lines),
        )
        for c in cartesian(range(n), repeat=data.rank)
    )
    name = f"cyclic({n})" if data.rank == 1 else f"cyclic({n})^{data.rank}"
    return FiniteGroup(name=name, modulus=n, order=n ** data.rank, classes=classes, derived=True)


def _cyclic_weight(m: int, degree: int) -> FiniteGroup:
    name = f"cyclic({m})" if degree == 1 else f"cyclic({m})[wt {degree}]"
    return FiniteGroup(
        name=name,
        modulus=m,
        order=m,
        classes=tuple(ClassDatum(size=1, exponents=((degree * k) % m,)) for k in range(m)),
        derived=True,
    )


def _replace(group: GroupSpec, rep: RepSpec, n: int) -> Tuple[GroupSpec, RepSpec, bool, int]:
    """(approximant group, rep, replaced any torus, order of the finite part)."""
    if isinstance(group, TorusGroup) or (isinstance(group, UnitaryGroup) and group.n == 1):
        finite = _torsion_classes(group, rep, n)
        return finite, FiniteGiven(), True, finite.order

    if isinstance(group, UnitaryGroup):
        # split cover SU(n) x U(1) -> U(n) for a homogeneous V of degree d
        degree = rep_degree(group, rep)
        cyclic = _cyclic_weight(n, degree)
        return (
            ProductGroup(factors=(SpecialUnitaryGroup(n=group.n), cyclic)),
            ExternalTensor(legs=(rep, FiniteGiven())),
            True,
            n,
        )

    if isinstance(group, ProductGroup):
        assert isinstance(rep, ExternalTensor)
        factors, legs = [], []
        replaced, order = False, 1
        for factor, leg in zip(group.factors, rep.legs):
            g, v, r, o = _replace(factor, leg, n)
            factors.append(g)
            legs.append(v)
            replaced = replaced or r
            order *= o
        return ProductGroup(factors=tuple(factors)), ExternalTensor(legs=tuple(legs)), replaced, order

    order = group.order if isinstance(group, FiniteGroup) else 1
    return group, rep, False, order


def torsion_approximant(
    group: GroupSpec,
    rep: RepSpec,
    n: int,
    base: Optional[str] = None,
) -> TorsionApproximant:
    """
    Replace every central torus by its n-torsion.

    Torus(r) becomes one finite class-data group of order n^r. U(m) passes
    through its split cover SU(m) x U(1) with V acting as V|SU(m) ⊠ wt d
    (d the common degree of V's weights), and the U(1) becomes cyclic(n).
    Invariant dimensions do not change when passing to the cover.

    Raises:
        SpecError: n < 1
        AlreadySemisimpleError: no torus factor to replace
    """
    if n < 1:
        raise SpecError(f"Torsion order must be positive, got {n}", {"n": n})
    approx_group, approx_rep, replaced, order = _replace(group, rep, n)
    if not replaced:
        raise AlreadySemisimpleError(
            f"{describe_group(group)} is already semisimple-by-finite",
            {"group": describe_group(group)},
        )
    return TorsionApproximant(
        base=base or describe_group(group),
        n=n,
        group=approx_group,
        rep=approx_rep,
        order=order,
    )


def verify_torsion_agreement(
    group: GroupSpec,
    rep: RepSpec,
    n: int,
    degree: Optional[int] = None,
    base: Optional[str] = None,
    engine: Optional[MomentEngine] = None,
) -> TorsionAgreementReport:
    """
    Compare F_{G,V} with F_{G_n,V} on all cells of total degree <= degree.

    Returns:
        Report with every canonical cell and the first disagreement in scan order
    """
    degree = config.torsion_default_degree if degree is None else degree
    engine = engine or MomentEngine()
    approximant = torsion_approximant(group, rep, n, base)

    cells: List[CellAgreement] = []
    first_norm: Optional[int] = None
    first_cell: Optional[Tuple[int, int]] = None
    for level in range(degree + 1):
        for a, b in cells_at_norm(level, Norm.TOTAL):
            exact = engine.moment(group, rep, a, b)
            approx = engine.moment(approximant.group, approximant.rep, a, b)
            agree = exact == approx
            cells.append(CellAgreement(a=a, b=b, exact=exact, approximant=approx, agree=agree))
            if not agree and first_norm is None:
                first_norm, first_cell = level, (a, b)

    report = TorsionAgreementReport(
        base=approximant.base,
        approximant=f"{describe_group(approximant.group)} on {describe_rep(approximant.rep)}",
        n=n,
        degree=degree,
        cells=cells,
        first_disagreement_norm=first_norm,
        first_disagreement_cell=first_cell,
    )
    logger.info(f"Torsion n={n} of {approximant.base}: {report.verdict}")
    return report
