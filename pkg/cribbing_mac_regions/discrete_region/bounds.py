import numpy as np

from cribbing_mac_regions.discrete_region.data_model import (
    JOINT_LABELS,
    AuxFactorization,
    ChannelForm,
    DiscreteChannelSpec,
    RateTriple,
)
from cribbing_mac_regions.errors import FormError
from cribbing_mac_regions.info_core import JointPmf, conditional_mutual_information
from cribbing_mac_regions.report_data_model import CheckRecord, CheckReport, identity_record

__all__ = [
    "REMARK1_TOLERANCE",
    "compose_joint",
    "compose_arrays",
    "joint_bounds",
    "theorem1_bounds",
    "theorem2_bounds",
    "state_penalties",
    "check_remark1",
    "check_remark1_joint",
]

REMARK1_TOLERANCE = 1e-10

# S0 S1 S2 U V1 V2 X1 X2 Y
_COMPOSE = "zab,zc,czafd,czbge,fgzabh->zabcdefgh"


def compose_arrays(
    spec: DiscreteChannelSpec,
    p_u: np.ndarray,
    p_x1v1: np.ndarray,
    p_x2v2: np.ndarray,
) -> np.ndarray:
    """The dense joint of all nine variables from canonical factor arrays, without validation."""
    return np.einsum(_COMPOSE, spec.state_array, p_u, p_x1v1, p_x2v2, spec.channel_array)


def compose_joint(spec: DiscreteChannelSpec, aux: AuxFactorization) -> JointPmf:
    """Joint pmf of (S0, S1, S2, U, V1, V2, X1, X2, Y) for the factorization of the channel form.

    t1: P(s1,s2) P(u) P(x1,v1|u,s1) P(x2,v2|u,s2) P(y|x1,x2,s1,s2).
    t2: P(s0) P(s1) P(s2) P(u|s0) P(x1,v1|u,s0,s1) P(x2,v2|u,s0,s2) P(y|x1,x2,s0,s1,s2).
    t1 joints carry S0 as a constant axis of size 1.

    Raises:
        ValueError : The factor alphabets do not match the channel.
    """
    if not isinstance(spec, DiscreteChannelSpec):
        raise TypeError("spec must be a DiscreteChannelSpec.")
    if not isinstance(aux, AuxFactorization):
        raise TypeError("aux must be an AuxFactorization.")
    aux.check_compatible(spec)
    probs = compose_arrays(spec, aux.p_u, aux.p_x1v1, aux.p_x2v2)
    return JointPmf(dims=probs.shape, probs=probs, labels=JOINT_LABELS)


def joint_bounds(p: JointPmf, form: ChannelForm) -> RateTriple:
    """The three rate bounds of the given channel form, evaluated on a composed joint with canonical labels."""
    mi = conditional_mutual_information
    if ChannelForm(form) is ChannelForm.T1:
        r1 = mi(p, "X1", "V1", ("U", "S2")) - mi(p, "V1", "S1", ("U", "S2"))
        r2 = mi(p, "X2", "V2", ("U", "S1")) - mi(p, "V2", "S2", ("U", "S1"))
        total = mi(p, "Y", ("V1", "V2", "U")) - mi(p, ("V1", "V2"), ("S1", "S2"), "U")
    else:
        r1 = mi(p, "X1", "V1", ("U", "S0")) - mi(p, "V1", "S1", ("U", "S0"))
        r2 = mi(p, "X2", "V2", ("U", "S0")) - mi(p, "V2", "S2", ("U", "S0"))
        total = mi(p, "Y", ("V1", "V2", "U")) - mi(p, ("U", "V1", "V2"), ("S0", "S1", "S2"))
    return RateTriple.clamped(r1, r2, total)


def _require_form(spec: DiscreteChannelSpec, form: ChannelForm, operation: str):
    if spec.form is not form:
        raise FormError(f"{operation} needs a '{form.value}' channel, got '{spec.form.value}'.")


def theorem1_bounds(spec: DiscreteChannelSpec, aux: AuxFactorization) -> RateTriple:
    """Bounds of the correlated-state region:

        R1      <= I(X1;V1|U,S2) - I(V1;S1|U,S2)
        R2      <= I(X2;V2|U,S1) - I(V2;S2|U,S1)
        R1 + R2 <= I(Y;V1,V2,U) - I(V1,V2;S1,S2|U)

    Raises:
        FormError : ``spec`` is a t2 channel.
    """
    _require_form(spec, ChannelForm.T1, "theorem1_bounds")
    return joint_bounds(compose_joint(spec, aux), ChannelForm.T1)


def theorem2_bounds(spec: DiscreteChannelSpec, aux: AuxFactorization) -> RateTriple:
    """Bounds of the common-state region:

        R1      <= I(X1;V1|U,S0) - I(V1;S1|U,S0)
        R2      <= I(X2;V2|U,S0) - I(V2;S2|U,S0)
        R1 + R2 <= I(Y;V1,V2,U) - I(U,V1,V2;S0,S1,S2)

    Raises:
        FormError : ``spec`` is a t1 channel.
    """
    _require_form(spec, ChannelForm.T2, "theorem2_bounds")
    return joint_bounds(compose_joint(spec, aux), ChannelForm.T2)


def state_penalties(p: JointPmf) -> dict[str, float]:
    """The binning costs paid against the states; all are nonnegative."""
    mi = conditional_mutual_information
    return {
        "I(V1;S1|U)": mi(p, "V1", "S1", "U"),
        "I(V2;S2|U)": mi(p, "V2", "S2", "U"),
        "I(V1,V2;S1,S2|U)": mi(p, ("V1", "V2"), ("S1", "S2"), "U"),
        "I(U,V1,V2;S0,S1,S2)": mi(p, ("U", "V1", "V2"), ("S0", "S1", "S2")),
    }


def check_remark1_joint(p: JointPmf, tolerance: float = REMARK1_TOLERANCE) -> CheckReport:
    """Both sides of I(Xi;Vi|U,Sj) - I(Vi;Si|U,Sj) = I(Xi,Sj;Vi|U) - I(Vi;Si|U), j = 3 - i.

    The identity follows from the Markov chain Sj - Si,U - Vi; a joint that breaks the chain may fail.
    """
    mi = conditional_mutual_information
    records = list[CheckRecord]()
    for i, j in ((1, 2), (2, 1)):
        x, v, s_own, s_other = f"X{i}", f"V{i}", f"S{i}", f"S{j}"
        lhs = mi(p, x, v, ("U", s_other)) - mi(p, v, s_own, ("U", s_other))
        rhs = mi(p, (x, s_other), v, "U") - mi(p, v, s_own, "U")
        records.append(identity_record(f"remark1[{i}]", lhs, rhs, tolerance))
    return CheckReport(name="remark1", records=records)


def check_remark1(spec: DiscreteChannelSpec, aux: AuxFactorization, tolerance: float = REMARK1_TOLERANCE) -> CheckReport:
    """The penalty identity of ``check_remark1_joint`` on the composed joint of a t1 channel.

    Raises:
        FormError : ``spec`` is a t2 channel.
    """
    _require_form(spec, ChannelForm.T1, "check_remark1")
    return check_remark1_joint(compose_joint(spec, aux), tolerance)
