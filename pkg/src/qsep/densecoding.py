"""Holevo quantity, dense-coding capacity and the four-class classification."""

from dataclasses import dataclass, field

import numpy as np

from qsep.criteria import (
    DEFAULT_TOL,
    PPT_SUFFICIENT_DIMS,
    CriterionVerdict,
    entropy_test,
    majorization_test,
    ppt_test,
    von_neumann_entropy,
)
from qsep.errors import DimensionError, DomainError, UnsupportedDimensionError
from qsep.states import DensityMatrix, bell_state

SEP = "SEP"
SEP_OR_BOUND = "SEP_or_BOUND"
PPT_ENT = "PPT_ENT"
NPT_NONDC = "NPT_NONDC"
DC = "DC"
CLASS_LABELS = (SEP, SEP_OR_BOUND, PPT_ENT, NPT_NONDC, DC)
ENTANGLED_LABELS = frozenset({PPT_ENT, NPT_NONDC, DC})

DC_THRESHOLD = 1e-9

_I2 = np.eye(2, dtype=np.complex128)
_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)

# Alice's encoding table: operator applied to her qubit -> message
PROTOCOL_TABLE = (("sigma_x", _X), ("sigma_y", _Y), ("sigma_z", _Z), ("identity", _I2))
# Bell state Bob finds after each encoding of the singlet, indexed by message
PROTOCOL_DECODING = ("phi_minus", "phi_plus", "psi_plus", "psi_minus")


@dataclass(frozen=True, eq=False)
class Ensemble:
    probs: np.ndarray
    states: tuple[DensityMatrix, ...]

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=float).reshape(-1)
        states = tuple(self.states)
        if probs.size != len(states) or not states:
            raise DomainError("ensemble needs one probability per state and at least one state")
        if np.any(probs < 0) or abs(probs.sum() - 1) > 1e-9:
            raise DomainError("ensemble probabilities must be non-negative and sum to 1")
        dims = {tuple(s.dims) for s in states}
        if len(dims) != 1:
            raise DimensionError(f"ensemble members have different dims {sorted(dims)}")
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "states", states)

    def average(self) -> np.ndarray:
        return sum(p * s.mat for p, s in zip(self.probs, self.states))


def holevo_chi(ens: Ensemble) -> float:
    """``S(sum_i p_i rho_i) - sum_i p_i S(rho_i)`` in bits."""
    avg = von_neumann_entropy(ens.average())
    return avg - float(sum(p * von_neumann_entropy(s) for p, s in zip(ens.probs, ens.states)))


def dc_advantage(rho: DensityMatrix) -> float:
    """``S(rho_B) - S(rho)``: the capacity gain over sending ``log2 d_A`` bits unassisted."""
    return von_neumann_entropy(rho.reduced("B")) - von_neumann_entropy(rho)


def dc_capacity(rho: DensityMatrix) -> float:
    """One-shot dense-coding capacity ``log2 d_A + S(rho_B) - S(rho)`` (raw, may fall below ``log2 d_A``)."""
    return float(np.log2(rho.dims.d_A)) + dc_advantage(rho)


def reported_capacity(rho: DensityMatrix) -> float:
    """Capacity floored at the unassisted ``log2 d_A``; the shared state can always be ignored."""
    return max(dc_capacity(rho), float(np.log2(rho.dims.d_A)))


def is_dc(rho: DensityMatrix) -> bool:
    return dc_advantage(rho) > DC_THRESHOLD


def pauli_encoding_ensemble(rho: DensityMatrix) -> Ensemble:
    """Equiprobable ``(W_j (x) I) rho (W_j (x) I)^dag`` for ``W_j`` in ``{I, X, Y, Z}``."""
    d_A, d_B = rho.dims
    if d_A != 2:
        raise UnsupportedDimensionError(f"Pauli encoding needs a qubit on Alice's side, got d_A = {d_A}")
    I_B = np.eye(d_B)
    states = []
    for W in (_I2, _X, _Y, _Z):
        U = np.kron(W, I_B)
        states.append(rho.conjugated(U))
    return Ensemble(np.full(4, 0.25), tuple(states))


def _bell_basis():
    return {kind: bell_state(kind).vec for kind in PROTOCOL_DECODING}


def simulate_protocol(message: int) -> int:
    """Encode ``message`` on a shared singlet, then decode by a Bell-basis measurement.

    Alice applies sigma_x, sigma_y, sigma_z or the identity for messages 0-3.
    """
    if message not in (0, 1, 2, 3):
        raise DomainError(f"message must be one of 0, 1, 2, 3, got {message!r}")
    psi = bell_state("psi_minus").vec
    _, W = PROTOCOL_TABLE[message]
    received = np.kron(W, _I2) @ psi
    basis = _bell_basis()
    probs = np.array([abs(np.vdot(basis[k], received)) ** 2 for k in PROTOCOL_DECODING])
    outcome = int(np.argmax(probs))
    # orthogonal outcomes: the measurement is deterministic
    assert abs(probs[outcome] - 1) < 1e-12
    return outcome


@dataclass(frozen=True)
class ClassificationReport:
    ppt: CriterionVerdict
    majorization: CriterionVerdict
    entropy: CriterionVerdict
    dc_advantage: float
    capacity: float
    class_label: str
    dims: tuple[int, int] = (2, 2)
    witness_value: float | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def entangled_certified(self) -> bool:
        return self.class_label in ENTANGLED_LABELS

    @property
    def separable_certified(self) -> bool:
        return self.class_label == SEP

    def as_dict(self) -> dict:
        return {
            "class_label": self.class_label,
            "dims": list(self.dims),
            "entangled_certified": self.entangled_certified,
            "separable_certified": self.separable_certified,
            "capacity": self.capacity,
            "dc_advantage": self.dc_advantage,
            "criteria": [v.as_dict() for v in (self.ppt, self.majorization, self.entropy)],
            "witness_value": self.witness_value,
            "notes": list(self.notes),
        }


def classify(rho: DensityMatrix, tol: float = DEFAULT_TOL, witness=None) -> ClassificationReport:
    """Sort ``rho`` into SEP / SEP_or_BOUND / PPT_ENT / NPT_NONDC / DC.

    PPT states outside 2x2 and 2x3 are left as ``SEP_or_BOUND`` unless
    ``witness`` (a :class:`qsep.witness.Witness`) takes a value below ``-tol``
    on them, which certifies PPT entanglement.
    """
    from qsep.witness import witness_value as _witness_value

    ppt = ppt_test(rho, tol)
    maj = majorization_test(rho, tol)
    ent = entropy_test(rho, tol)
    adv = dc_advantage(rho)
    wval = _witness_value(witness, rho) if witness is not None else None
    notes = []

    if adv > DC_THRESHOLD:
        label = DC
    elif ppt.violated:
        label = NPT_NONDC
    elif tuple(rho.dims) in PPT_SUFFICIENT_DIMS:
        label = SEP
    elif wval is not None and wval < -tol:
        label = PPT_ENT
    else:
        label = SEP_OR_BOUND
        notes.append("PPT state outside 2x2/2x3: separability undetermined")

    if label == DC and not ppt.violated:
        # cannot happen for a PPT state; flag rather than silently relabel
        notes.append("dense-coding advantage on a PPT state: check tolerances")

    return ClassificationReport(
        ppt=ppt,
        majorization=maj,
        entropy=ent,
        dc_advantage=adv,
        capacity=reported_capacity(rho),
        class_label=label,
        dims=tuple(rho.dims),
        witness_value=wval,
        notes=tuple(notes),
    )
