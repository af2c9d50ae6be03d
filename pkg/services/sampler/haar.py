"""
Haar-random group elements and the traces of their action on V.
"""
from typing import List, Optional, Tuple

import numpy as np
from scipy.linalg import qr
from tenacity import RetryError, Retrying, retry_if_exception_type, stop_after_attempt

from shared.exceptions import DegenerateSampleError, UnsupportedGroupError
from shared.models.group_models import (
    FiniteGroup,
    GroupSpec,
    ProductGroup,
    SpecialUnitaryGroup,
    TorusGroup,
    UnitaryGroup,
    describe_group,
)
from shared.models.rep_models import ExternalTensor, RepSpec
from shared.utils.logging import logger
from services.groups.representations import finite_rep_classes, torus_restriction
from services.sampler.config import config


def haar_unitary(n: int, rng: np.random.Generator, size: Optional[int] = None) -> np.ndarray:
    """
    Haar-distributed unitary matrices from complex Ginibre draws.

    Q from Z = QR is Haar only after fixing the phases of R's diagonal:
    Q <- Q * diag(R_ii / |R_ii|).

    Args:
        n: Matrix size
        rng: Source generator
        size: Batch size; None for a single (n, n) matrix

    Returns:
        Array of shape (n, n) or (size, n, n)

    Raises:
        DegenerateSampleError: Some |R_ii| fell below the degeneracy tolerance
    """
    shape = (n, n) if size is None else (size, n, n)
    z = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)

    if size is None:
        q, r = qr(z)
    else:
        q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    magnitude = np.abs(d)
    if np.any(magnitude < config.degeneracy_tolerance):
        raise DegenerateSampleError(
            "Degenerate QR factor in Ginibre draw",
            {"min_abs_diagonal": float(magnitude.min())},
        )
    phases = d / magnitude
    return q * phases[..., None, :]


def _draw_unitary(n: int, rng: np.random.Generator, size: Optional[int]) -> Tuple[np.ndarray, int]:
    """haar_unitary with a bounded number of fresh redraws; returns (matrices, retries)."""
    retrying = Retrying(
        stop=stop_after_attempt(config.max_retries),
        retry=retry_if_exception_type(DegenerateSampleError),
    )
    try:
        for attempt in retrying:
            with attempt:
                matrices = haar_unitary(n, rng, size)
            if not attempt.retry_state.outcome.failed:
                retries = attempt.retry_state.attempt_number - 1
                if retries:
                    logger.warning(f"Haar draw for n={n} needed {retries} retries")
                return matrices, retries
    except RetryError as e:
        raise DegenerateSampleError(
            f"Orthonormalization stayed degenerate after {config.max_retries} attempts",
            {"n": n, "attempts": config.max_retries},
        ) from e
    raise DegenerateSampleError("Haar draw produced no sample")


def _torus_character(alpha: np.ndarray, weights: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Σ_w c_w exp(i <w, alpha>) for each row of alpha."""
    return np.exp(1j * (alpha @ weights.T)) @ coeffs


class TraceSampler:
    """
    Draws tr(g | V) for Haar-random g.

    Torus: independent uniform angles. U(n): Ginibre + phase-corrected QR,
    trace read from the eigenvalues through the torus character of V.
    SU(n): the U(n) sample times e^{-iφ/n}, det = e^{iφ}; U -> U·det(U)^{-1/n}
    pushes Haar on U(n) to Haar on SU(n) since it commutes with right
    multiplication by SU(n). Finite: a class drawn with probability
    size/|G|. Product: independent factors, traces multiplied.
    """

    def __init__(self, group: GroupSpec, rep: RepSpec):
        self.group = group
        self.rep = rep
        self.legs: List["TraceSampler"] = []

        if isinstance(group, ProductGroup):
            if not isinstance(rep, ExternalTensor):
                raise UnsupportedGroupError("Product groups need an ExternalTensor representation")
            self.legs = [TraceSampler(f, leg) for f, leg in zip(group.factors, rep.legs)]
        elif isinstance(group, FiniteGroup):
            classes = finite_rep_classes(group, rep)
            self.class_traces = np.array([c.trace(classes.modulus) for c in classes.classes])
            self.class_probs = np.array([c.size for c in classes.classes], dtype=float) / classes.order
        elif isinstance(group, (TorusGroup, UnitaryGroup, SpecialUnitaryGroup)):
            self.weights, self.coeffs = torus_restriction(group, rep).weights.as_arrays()
        else:
            raise UnsupportedGroupError(f"No sampler for {describe_group(group)}")

    def sample(self, rng: np.random.Generator, size: int) -> Tuple[np.ndarray, int]:
        """
        Draw ``size`` traces.

        Returns:
            (complex array of shape (size,), number of degenerate redraws)
        """
        group = self.group
        if isinstance(group, ProductGroup):
            traces = np.ones(size, dtype=complex)
            retries = 0
            for leg in self.legs:
                leg_traces, leg_retries = leg.sample(rng, size)
                traces = traces * leg_traces
                retries += leg_retries
            return traces, retries

        if isinstance(group, FiniteGroup):
            picks = rng.choice(len(self.class_traces), size=size, p=self.class_probs)
            return self.class_traces[picks], 0

        if isinstance(group, TorusGroup):
            alpha = 2.0 * np.pi * rng.random((size, group.rank))
            return _torus_character(alpha, self.weights, self.coeffs), 0

        n = group.n
        if size == 1:
            matrices, retries = _draw_unitary(n, rng, None)
            matrices = matrices[None, ...]
        else:
            matrices, retries = _draw_unitary(n, rng, size)
        eigenvalues = np.linalg.eigvals(matrices)
        alpha = np.angle(eigenvalues)
        if isinstance(group, SpecialUnitaryGroup):
            phi = np.angle(np.prod(eigenvalues, axis=1))
            alpha = alpha - (phi / n)[:, None]
        return _torus_character(alpha, self.weights, self.coeffs), retries


def haar_sample_trace(group: GroupSpec, rep: RepSpec, rng: np.random.Generator) -> complex:
    """Trace of a single Haar-random element acting on V."""
    traces, _ = TraceSampler(group, rep).sample(rng, 1)
    return complex(traces[0])
