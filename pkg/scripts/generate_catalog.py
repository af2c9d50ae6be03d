#!/usr/bin/env python3
"""
Regenerate the exceptional binary polyhedral data files and their manifest.

Each group is built as the closure of two unit quaternions under
multiplication; conjugacy classes are conjugation orbits, and the Std
eigenphases e^{±iθ} of each class are snapped to the group modulus. The
snapped data is then re-checked against the closure of the same generators
computed exactly in Z[ζ_M] before anything is written.
"""
import argparse
import json
import sys
from math import gcd, sqrt
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np

# Add project root to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from shared.utils.config import settings
from shared.utils.logging import logger
from shared.utils.security import content_checksum
from services.groups.config import config
from services.moments.cyclotomic import cyclic_mul, cyclotomic_poly, poly_divmod

PHI = (1 + sqrt(5)) / 2
OMEGA = (0.5, 0.5, 0.5, 0.5)

# name -> (generators, order, modulus, generator description)
GROUPS = {
    "binary_tetrahedral": (
        [(0.0, 1.0, 0.0, 0.0), OMEGA],
        24,
        12,
        "i and (1+i+j+k)/2",
    ),
    "binary_octahedral": (
        [(1 / sqrt(2), 1 / sqrt(2), 0.0, 0.0), OMEGA],
        48,
        24,
        "(1+i)/sqrt(2) and (1+i+j+k)/2",
    ),
    "binary_icosahedral": (
        [OMEGA, (PHI / 2, 1 / (2 * PHI), 0.5, 0.0)],
        120,
        60,
        "(1+i+j+k)/2 and (phi+i/phi+j)/2",
    ),
}

Quaternion = np.ndarray


def qmul(p: Quaternion, q: Quaternion) -> Quaternion:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array(
        [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ]
    )


def qconj(q: Quaternion) -> Quaternion:
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def _key(q: Quaternion) -> Tuple[int, ...]:
    return tuple(int(round(x * 1e6)) for x in q)


def closure(generators: List[Quaternion], limit: int = 1000) -> List[Quaternion]:
    """All products of the generators, breadth first from the identity."""
    identity = np.array([1.0, 0.0, 0.0, 0.0])
    elements: Dict[Tuple[int, ...], Quaternion] = {_key(identity): identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for q in frontier:
            for g in generators:
                r = qmul(q, g)
                k = _key(r)
                if k not in elements:
                    elements[k] = r
                    nxt.append(r)
        if len(elements) > limit:
            raise RuntimeError(f"Closure exceeded {limit} elements")
        frontier = nxt
    return list(elements.values())


def conjugacy_classes(elements: List[Quaternion]) -> List[List[Quaternion]]:
    seen = set()
    classes = []
    for q in elements:
        if _key(q) in seen:
            continue
        orbit = {_key(qmul(qmul(g, q), qconj(g))): qmul(qmul(g, q), qconj(g)) for g in elements}
        seen.update(orbit)
        classes.append(list(orbit.values()))
    return classes


def snap_exponent(q: Quaternion, modulus: int) -> int:
    """e with Re(q) = cos(2πe/M), 0 <= e <= M/2."""
    theta = float(np.arccos(np.clip(q[0], -1.0, 1.0)))
    scaled = theta * modulus / (2 * np.pi)
    e = int(round(scaled))
    if abs(scaled - e) > 1e-6:
        raise RuntimeError(f"Eigenphase {theta} is not a multiple of 2π/{modulus}")
    return e


def build(name: str) -> Dict:
    generators, order, modulus, described = GROUPS[name]
    elements = closure([np.array(g, dtype=float) for g in generators])
    if len(elements) != order:
        raise RuntimeError(f"{name}: closure has {len(elements)} elements, expected {order}")

    rows = []
    for cls in conjugacy_classes(elements):
        e = snap_exponent(cls[0], modulus)
        element_order = modulus // gcd(e, modulus)
        rows.append((element_order, e, len(cls)))
    rows.sort()

    return {
        "name": name,
        "version": 1,
        "order": order,
        "modulus": modulus,
        "classes": [
            {"size": size, "exponents": [e, (modulus - e) % modulus]} for _, e, size in rows
        ],
        "provenance": (
            f"scripts/generate_catalog.py: closure of unit quaternions {described}, "
            f"conjugacy classes as conjugation orbits, eigenphases snapped to denominator {modulus}"
        ),
    }


# Exact verification in Z[ζ_M]: quaternion coordinates are stored doubled,
# as sums of M-th roots of unity.
EXACT_GENERATORS: Dict[str, List[List[Dict[int, int]]]] = {
    "binary_tetrahedral": [
        [{}, {0: 2}, {}, {}],
        [{0: 1}, {0: 1}, {0: 1}, {0: 1}],
    ],
    "binary_octahedral": [
        [{3: 1, 21: 1}, {3: 1, 21: 1}, {}, {}],
        [{0: 1}, {0: 1}, {0: 1}, {0: 1}],
    ],
    "binary_icosahedral": [
        [{0: 1}, {0: 1}, {0: 1}, {0: 1}],
        [{0: 1, 12: 1, 48: 1}, {12: 1, 48: 1}, {0: 1}, {}],
    ],
}

RingElement = Tuple[int, ...]
Matrix = Tuple[RingElement, RingElement, RingElement, RingElement]


class CyclotomicRing:
    """Z[X]/(Phi_M), elements as length-M coefficient tuples in reduced form."""

    def __init__(self, modulus: int):
        self.modulus = modulus
        self.phi = list(cyclotomic_poly(modulus))

    def reduce(self, coeffs: List[int]) -> RingElement:
        _, remainder = poly_divmod(coeffs, self.phi)
        return tuple(remainder) + (0,) * (self.modulus - len(remainder))

    def element(self, terms: Dict[int, int]) -> RingElement:
        coeffs = [0] * self.modulus
        for e, c in terms.items():
            coeffs[e % self.modulus] += c
        return self.reduce(coeffs)

    def add(self, p: RingElement, q: RingElement) -> RingElement:
        return tuple(x + y for x, y in zip(p, q))

    def mul(self, p: RingElement, q: RingElement) -> RingElement:
        return self.reduce(cyclic_mul(p, q))


def _doubled_matrix(ring: CyclotomicRing, coords: List[Dict[int, int]]) -> Matrix:
    """2·[[a + ib, c + id], [-c + id, a - ib]] for q = a + bi + cj + dk."""
    a, b, c, d = (ring.element(t) for t in coords)
    i = ring.element({ring.modulus // 4: 1})
    neg = ring.element({0: -1})
    ib, id_ = ring.mul(i, b), ring.mul(i, d)
    return (
        ring.add(a, ib),
        ring.add(c, id_),
        ring.add(ring.mul(neg, c), id_),
        ring.add(a, ring.mul(neg, ib)),
    )


def _halve(x: RingElement) -> RingElement:
    if any(c % 2 for c in x):
        raise RuntimeError("Product left the ring of half-integral cyclotomic matrices")
    return tuple(c // 2 for c in x)


def _matmul(ring: CyclotomicRing, p: Matrix, q: Matrix) -> Matrix:
    p00, p01, p10, p11 = p
    q00, q01, q10, q11 = q
    return tuple(
        _halve(ring.add(ring.mul(x1, y1), ring.mul(x2, y2)))
        for x1, x2, y1, y2 in (
            (p00, p01, q00, q10),
            (p00, p01, q01, q11),
            (p10, p11, q00, q10),
            (p10, p11, q01, q11),
        )
    )


def verify_exact(name: str, document: Dict) -> None:
    """
    Close the generators exactly and check order, class sizes and eigenphases.

    Raises:
        RuntimeError: the data disagrees with the exact group
    """
    modulus = document["modulus"]
    ring = CyclotomicRing(modulus)
    generators = [_doubled_matrix(ring, coords) for coords in EXACT_GENERATORS[name]]
    two = ring.element({0: 2})
    zero = ring.element({})
    identity: Matrix = (two, zero, zero, two)

    elements = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for m in frontier:
            for g in generators:
                r = _matmul(ring, m, g)
                if r not in elements:
                    elements.add(r)
                    nxt.append(r)
        if len(elements) > document["order"]:
            raise RuntimeError(f"{name}: exact closure exceeds order {document['order']}")
        frontier = nxt
    if len(elements) != document["order"]:
        raise RuntimeError(f"{name}: exact closure has {len(elements)} elements")

    # doubled trace -> element count, against the class data
    counted: Dict[RingElement, int] = {}
    for m in elements:
        trace = ring.add(m[0], m[3])
        counted[trace] = counted.get(trace, 0) + 1
    expected: Dict[RingElement, int] = {}
    for c in document["classes"]:
        coeffs = [0] * modulus
        for e in c["exponents"]:
            coeffs[e % modulus] += 2
        trace = ring.reduce(coeffs)
        expected[trace] = expected.get(trace, 0) + c["size"]
    if counted != expected:
        raise RuntimeError(f"{name}: class sizes or eigenphases disagree with the exact group")
    logger.info(f"Verified {name} exactly in Z[ζ_{modulus}] ({len(elements)} elements)")


def render(document: Dict) -> str:
    """Two-space JSON with one class per line."""
    classes = ",\n".join(
        f'    {{"size": {c["size"]}, "exponents": {json.dumps(c["exponents"])}}}'
        for c in document["classes"]
    )
    return (
        "{\n"
        f'  "name": {json.dumps(document["name"])},\n'
        f'  "version": {document["version"]},\n'
        f'  "order": {document["order"]},\n'
        f'  "modulus": {document["modulus"]},\n'
        '  "classes": [\n'
        f"{classes}\n"
        "  ],\n"
        f'  "provenance": {json.dumps(document["provenance"])}\n'
        "}\n"
    )


def main() -> int:
    parser = argparse.ArgumentParser(description="Regenerate catalog data files")
    parser.add_argument("--out", type=Path, default=Path(settings.catalog_dir))
    parser.add_argument("--check", action="store_true", help="Compare instead of writing")
    args = parser.parse_args()

    manifest: Dict[str, str] = {}
    stale = []
    for name in GROUPS:
        document = build(name)
        verify_exact(name, document)
        text = render(document)
        filename = f"{name}.json"
        manifest[filename] = content_checksum(text)
        path = args.out / filename
        if args.check:
            if not path.exists() or path.read_text(encoding="utf-8") != text:
                stale.append(filename)
            continue
        args.out.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        logger.info(f"Wrote {path}")

    if args.check:
        if stale:
            print(f"Stale data files: {', '.join(stale)}")
            return 1
        print("Catalog data files are up to date")
        return 0

    manifest_text = json.dumps({"version": 1, "files": manifest}, indent=2, sort_keys=True) + "\n"
    (args.out / config.manifest_name).write_text(manifest_text, encoding="utf-8")
    print(f"Wrote {len(manifest)} data files and {config.manifest_name} to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
