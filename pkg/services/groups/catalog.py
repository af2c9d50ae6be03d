"""
Named (group, representation) pairs: continuous presets, closed-form finite
families and checksummed data files for the exceptional binary polyhedral groups.
"""
import json
import re
from dataclasses import dataclass
from math import gcd
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from pydantic import ValidationError

from shared.exceptions import CatalogError
from shared.models.group_models import (
    ClassDatum,
    FiniteGroup,
    GroupSpec,
    SpecialUnitaryGroup,
    TorusGroup,
    UnitaryGroup,
)
from shared.models.rep_models import FiniteGiven, Regular, RepSpec, Std, TorusWeights
from shared.utils.config import settings
from shared.utils.logging import logger
from shared.utils.security import content_checksum
from services.groups.config import config
from services.groups.representations import rep_dimension

PRESETS: Dict[str, Tuple[GroupSpec, RepSpec]] = {
    "u1-wt1": (TorusGroup(rank=1), TorusWeights(weights=((1,),))),
    "t2-std": (TorusGroup(rank=2), TorusWeights(weights=((1, 0), (0, 1)))),
    "u2-std": (UnitaryGroup(n=2), Std()),
    "u3-std": (UnitaryGroup(n=3), Std()),
    "su2-std": (SpecialUnitaryGroup(n=2), Std()),
    "su3-std": (SpecialUnitaryGroup(n=3), Std()),
}

ALIASES: Dict[str, str] = {
    "2T": "binary_tetrahedral",
    "2O": "binary_octahedral",
    "2I": "binary_icosahedral",
}

EXCEPTIONAL = ("binary_tetrahedral", "binary_octahedral", "binary_icosahedral")

NORMALIZER = "torus_normalizer_su2"

_FAMILY = re.compile(r"^(cyclic|binary_dihedral)\((\d+)\)$")
_REGULAR = re.compile(r"^regular\((.+)\)$")


@dataclass(frozen=True)
class CatalogEntry:
    """A resolved catalog name."""

    name: str
    group: GroupSpec
    rep: RepSpec
    provenance: str

    @property
    def dim(self) -> int:
        return rep_dimension(self.group, self.rep)


# Closed-form finite families


def cyclic(n: int) -> FiniteGroup:
    """Z/n acting on C by weight 1: class k has eigenphase exponent k."""
    if n < 1:
        raise CatalogError(f"cyclic(n) needs n >= 1, got {n}")
    return FiniteGroup(
        name=f"cyclic({n})",
        modulus=n,
        order=n,
        classes=tuple(ClassDatum(size=1, exponents=(k,)) for k in range(n)),
    )


def binary_dihedral(order: int) -> FiniteGroup:
    """
    Dicyclic group of the given order 4n inside SU(2), acting by Std.

    Generated by a = diag(ζ, ζ⁻¹) with ζ a primitive 2n-th root of unity and
    b with b² = -1, b a b⁻¹ = a⁻¹. Classes: {1}, {-1}, {a^j, a^-j} for
    0 < j < n, and the two classes of b a^even, b a^odd (eigenvalues ±i).
    """
    if order % 4:
        raise CatalogError(f"binary_dihedral order must be a multiple of 4, got {order}")
    n = order // 4
    if not config.binary_dihedral_min_n <= n <= config.binary_dihedral_max_n:
        raise CatalogError(
            f"binary_dihedral({order}) outside the supported range "
            f"{4 * config.binary_dihedral_min_n}..{4 * config.binary_dihedral_max_n}",
            {"n": n},
        )

    modulus = 2 * n * 4 // gcd(2 * n, 4)
    step = modulus // (2 * n)
    quarter = modulus // 4

    classes = [
        ClassDatum(size=1, exponents=(0, 0)),
        ClassDatum(size=1, exponents=(n * step, n * step)),
    ]
    for j in range(1, n):
        classes.append(ClassDatum(size=2, exponents=(j * step, modulus - j * step)))
    classes.append(ClassDatum(size=n, exponents=(quarter, 3 * quarter)))
    classes.append(ClassDatum(size=n, exponents=(quarter, 3 * quarter)))

    return FiniteGroup(
        name=f"binary_dihedral({order})",
        modulus=modulus,
        order=order,
        classes=tuple(classes),
    )


# Data files


def _catalog_dir(catalog_dir: Optional[Path] = None) -> Path:
    return Path(catalog_dir) if catalog_dir is not None else Path(settings.catalog_dir)


def load_manifest(catalog_dir: Optional[Path] = None) -> Dict[str, str]:
    """Read the file -> sha256 map of a catalog directory."""
    path = _catalog_dir(catalog_dir) / config.manifest_name
    if not path.exists():
        raise CatalogError(f"Catalog manifest not found: {path}", {"path": str(path)})
    try:
        manifest = json.loads(path.read_text(encoding="utf-8"))
        return dict(manifest["files"])
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise CatalogError(f"Malformed catalog manifest {path}: {e}", {"path": str(path)})


def load_data_file(name: str, catalog_dir: Optional[Path] = None) -> FiniteGroup:
    """
    Load one exceptional group from its data file.

    The checksum recorded in the manifest is checked first, then every
    FiniteClasses invariant is re-validated on the parsed content.

    Args:
        name: Entry name, e.g. ``binary_icosahedral``
        catalog_dir: Override for ``settings.catalog_dir``

    Returns:
        Validated finite group spec
    """
    directory = _catalog_dir(catalog_dir)
    filename = f"{name}.json"
    path = directory / filename
    if not path.exists():
        raise CatalogError(f"Catalog data file not found: {path}", {"name": name})

    manifest = load_manifest(directory)
    expected = manifest.get(filename)
    raw = path.read_bytes()
    if expected is None:
        raise CatalogError(f"{filename} is not listed in the catalog manifest", {"name": name})
    actual = content_checksum(raw)
    if actual != expected:
        raise CatalogError(
            f"Checksum mismatch for {filename}",
            {"name": name, "expected": expected, "actual": actual},
        )

    try:
        document = json.loads(raw.decode("utf-8"))
        group = FiniteGroup(
            name=document["name"],
            modulus=document["modulus"],
            order=document["order"],
            classes=tuple(ClassDatum(**c) for c in document["classes"]),
        )
    except (json.JSONDecodeError, KeyError, TypeError) as e:
        raise CatalogError(f"Malformed data file {filename}: {e}", {"name": name})
    except ValidationError as e:
        raise CatalogError(
            f"Data file {filename} violates class-data invariants: {e.errors()[0]['msg']}",
            {"name": name},
        )

    if group.name != name:
        raise CatalogError(
            f"{filename} declares name {group.name!r}", {"name": name}
        )
    logger.debug(f"Loaded catalog data file {filename} (order {group.order})")
    return group


# Resolution


def catalog_entry(name: str, catalog_dir: Optional[Path] = None) -> CatalogEntry:
    """Resolve a catalog name to a validated entry."""
    key = name.strip()
    key = ALIASES.get(key, key)

    if key in PRESETS:
        group, rep = PRESETS[key]
        return CatalogEntry(name=key, group=group, rep=rep, provenance="preset")

    regular = _REGULAR.match(key)
    if regular:
        inner = catalog_entry(regular.group(1), catalog_dir)
        if not isinstance(inner.group, FiniteGroup):
            raise CatalogError(f"regular(...) needs a finite group, got {inner.name}")
        return CatalogEntry(
            name=f"regular({inner.name})",
            group=inner.group,
            rep=Regular(),
            provenance=f"regular representation of {inner.name}",
        )

    family = _FAMILY.match(key)
    if family:
        kind, value = family.group(1), int(family.group(2))
        group = cyclic(value) if kind == "cyclic" else binary_dihedral(value)
        return CatalogEntry(name=key, group=group, rep=FiniteGiven(), provenance="closed form")

    if key == NORMALIZER:
        order = 4 * config.normalizer_approximation_n
        logger.warning(
            f"{NORMALIZER} is approximated by binary_dihedral({order}); "
            "the normalizer of the torus in SU(2) is infinite"
        )
        return CatalogEntry(
            name=f"binary_dihedral({order})",
            group=binary_dihedral(order),
            rep=FiniteGiven(),
            provenance=f"approximation of {NORMALIZER}",
        )

    if key in EXCEPTIONAL:
        group = load_data_file(key, catalog_dir)
        return CatalogEntry(name=key, group=group, rep=FiniteGiven(), provenance="data file")

    raise CatalogError(f"Unknown catalog entry: {name}", {"name": name})


def catalog_load(name: str, catalog_dir: Optional[Path] = None) -> Tuple[GroupSpec, RepSpec]:
    """Validated (group, rep) pair for a catalog name."""
    entry = catalog_entry(name, catalog_dir)
    return entry.group, entry.rep


def finite_subgroup_names() -> List[str]:
    """The finite subgroups of SU(2) shipped by the catalog."""
    dihedral = [
        f"binary_dihedral({4 * n})"
        for n in range(config.binary_dihedral_min_n, config.binary_dihedral_max_n + 1)
    ]
    return dihedral + list(EXCEPTIONAL)


def catalog_names() -> List[str]:
    """Stable public names in listing order."""
    cyclics = [f"cyclic({n})" for n in range(1, config.cyclic_pair_max_n + 1)]
    return list(PRESETS) + cyclics + finite_subgroup_names() + [NORMALIZER]


def catalog_pairs() -> List[Tuple[str, str]]:
    """
    Recorded (subgroup, parent) pairs, both acting on the same representation.

    For each pair F_parent(a,b) <= F_subgroup(a,b) cellwise.
    """
    pairs: List[Tuple[str, str]] = []
    for n in range(1, config.cyclic_pair_max_n + 1):
        pairs.append((f"cyclic({n})", "u1-wt1"))
    for n in range(1, config.cyclic_pair_max_n // 2 + 1):
        pairs.append((f"cyclic({n})", f"cyclic({2 * n})"))
    for name in finite_subgroup_names():
        pairs.append((name, "su2-std"))
    for n in range(config.binary_dihedral_min_n, config.binary_dihedral_max_n // 2 + 1):
        pairs.append((f"binary_dihedral({4 * n})", f"binary_dihedral({8 * n})"))
    pairs.extend(
        [
            ("binary_dihedral(8)", "binary_tetrahedral"),
            ("binary_tetrahedral", "binary_octahedral"),
            ("binary_tetrahedral", "binary_icosahedral"),
            ("binary_dihedral(16)", "binary_octahedral"),
            ("binary_dihedral(12)", "binary_octahedral"),
            ("binary_dihedral(20)", "binary_icosahedral"),
            ("binary_dihedral(12)", "binary_icosahedral"),
            ("t2-std", "u2-std"),
            ("su2-std", "u2-std"),
            ("su3-std", "u3-std"),
        ]
    )
    return pairs


def catalog_summary(name: str, catalog_dir: Optional[Path] = None) -> Dict[str, Any]:
    """Row used by ``catalog list`` / ``catalog show``."""
    entry = catalog_entry(name, catalog_dir)
    row: Dict[str, Any] = {
        "name": entry.name,
        "group": entry.group.model_dump(mode="json"),
        "rep": entry.rep.model_dump(mode="json"),
        "dim": entry.dim,
        "provenance": entry.provenance,
    }
    if isinstance(entry.group, FiniteGroup):
        row["order"] = entry.group.order
        row["classes"] = len(entry.group.classes)
    return row


def _self_dual(group: FiniteGroup) -> bool:
    m = group.modulus
    return all(
        sorted(c.exponents) == sorted((-e) % m for e in c.exponents) for c in group.classes
    )


def catalog_verify(catalog_dir: Optional[Path] = None) -> List[Dict[str, Any]]:
    """
    Re-run every data-file and family invariant.

    Returns:
        One ``{"name", "ok", "message"}`` row per checked entry
    """
    directory = _catalog_dir(catalog_dir)
    results: List[Dict[str, Any]] = []

    listed: Dict[str, str] = {}
    try:
        listed = load_manifest(directory)
    except CatalogError as e:
        results.append({"name": config.manifest_name, "ok": False, "message": e.message})

    on_disk = {p.name for p in directory.glob("*.json") if p.name != config.manifest_name}
    for orphan in sorted(on_disk - set(listed)):
        results.append(
            {"name": orphan, "ok": False, "message": "data file not listed in manifest"}
        )

    for name in [n for n in catalog_names() if n not in PRESETS]:
        try:
            group = catalog_entry(name, directory).group
            if not isinstance(group, FiniteGroup):
                raise CatalogError(f"{name} is not a finite group")
            if not name.startswith("cyclic") and not _self_dual(group):
                raise CatalogError(f"{name}: traces are not real on Std")
            results.append({"name": name, "ok": True, "message": f"order {group.order}"})
        except CatalogError as e:
            results.append({"name": name, "ok": False, "message": e.message})

    failures = sum(1 for r in results if not r["ok"])
    if failures:
        logger.error(f"Catalog verification found {failures} failing entries in {directory}")
    else:
        logger.info(f"Catalog verification passed for {len(results)} entries")
    return results
