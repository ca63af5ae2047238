from cribbing_mac_regions.gaussian_oracle.scheme_covariance import SchemeCovariance
from cribbing_mac_regions.info_core import gaussian_mutual_information
from cribbing_mac_regions.report_data_model import CheckRecord, CheckReport, dominance_record, identity_record

__all__ = [
    "ORTHOGONALITY_TOLERANCE",
    "LEMMA1_TOLERANCE",
    "MARKOV_TOLERANCE",
    "CheckRecord",
    "CheckReport",
    "identity_record",
    "dominance_record",
    "verify_orthogonality",
    "verify_lemma1",
    "verify_markov_structure",
    "oracle_sum_rate",
    "oracle_layered_sum_rate",
    "oracle_joint_sum_rate",
]

ORTHOGONALITY_TOLERANCE = 1e-9
LEMMA1_TOLERANCE = 1e-8
MARKOV_TOLERANCE = 1e-8

_W = ("U", "V1", "V2")
_STATES = ("S0", "S1", "S2")


def verify_orthogonality(sc: SchemeCovariance, tolerance: float = ORTHOGONALITY_TOLERANCE) -> CheckReport:
    """Covariances of phi0, phi1, phi2 with Y and with S0; each must vanish.

    Failures are reported, never raised.
    """
    records = list[CheckRecord]()
    for phi in ("phi0", "phi1", "phi2"):
        for other in ("Y", "S0"):
            value = sc.covariance(phi, other)
            records.append(identity_record(f"cov({phi},{other})", value, 0.0, tolerance))
    return CheckReport(name="orthogonality", records=records)


def verify_lemma1(sc: SchemeCovariance, tolerance: float = LEMMA1_TOLERANCE) -> CheckReport:
    """Both sides of the common-layer and private-layer identities, evaluated by log-det.

    Common layer, with W = (U, V1, V2):
        I(Y;W) = I(Y,S0;W) = I(Y;W|S0) + I(W;S0)
    Private layer, for i = 1, 2:
        I(Y;Vi|U,S0) = I(Y,Si;Vi|U,S0) = I(Y;Vi|U,S0,Si) + I(Si;Vi|U,S0)

    Raises:
        SingularCovarianceError : A sub-block is singular after jitter.
    """
    g = sc.joint
    mi = gaussian_mutual_information
    records = list[CheckRecord]()
    with_s0 = mi(g, ("Y", "S0"), _W)
    records.append(identity_record("I(Y;W) = I(Y,S0;W)", mi(g, "Y", _W), with_s0, tolerance))
    records.append(
        identity_record("I(Y,S0;W) = I(Y;W|S0) + I(W;S0)", with_s0, mi(g, "Y", _W, "S0") + mi(g, _W, "S0"), tolerance)
    )
    for i in (1, 2):
        v, s = f"V{i}", f"S{i}"
        with_si = mi(g, ("Y", s), v, ("U", "S0"))
        records.append(identity_record(f"I(Y;{v}|U,S0) = I(Y,{s};{v}|U,S0)", mi(g, "Y", v, ("U", "S0")), with_si, tolerance))
        records.append(
            identity_record(
                f"I(Y,{s};{v}|U,S0) = I(Y;{v}|U,S0,{s}) + I({s};{v}|U,S0)",
                with_si,
                mi(g, "Y", v, ("U", "S0", s)) + mi(g, s, v, ("U", "S0")),
                tolerance,
            )
        )
    return CheckReport(name="lemma1", records=records)


def verify_markov_structure(sc: SchemeCovariance, tolerance: float = MARKOV_TOLERANCE) -> CheckReport:
    """Conditional independences of the construction: S1S2 - S0 - U and V2S2 - US0 - V1S1."""
    g = sc.joint
    mi = gaussian_mutual_information
    records = [
        identity_record("I(S1,S2;U|S0)", mi(g, ("S1", "S2"), "U", "S0"), 0.0, tolerance),
        identity_record("I(V1;S2|U,S0,S1)", mi(g, "V1", "S2", ("U", "S0", "S1")), 0.0, tolerance),
        identity_record("I(V2;S1|U,S0,S2)", mi(g, "V2", "S1", ("U", "S0", "S2")), 0.0, tolerance),
    ]
    return CheckReport(name="markov", records=records)


def oracle_layered_sum_rate(sc: SchemeCovariance) -> float:
    """[I(U;Y) - I(U;S0)] + sum_i [I(Vi;Y|U,S0) - I(Vi;Si|U,S0)], by log-det.

    The common codeword is decoded first against S0; each private codeword is then decoded against its
    own residual state, treating the other private codeword as noise.
    """
    g = sc.joint
    mi = gaussian_mutual_information
    value = mi(g, "U", "Y") - mi(g, "U", "S0")
    for i in (1, 2):
        v = f"V{i}"
        value += mi(g, v, "Y", ("U", "S0")) - mi(g, v, f"S{i}", ("U", "S0"))
    return max(value, 0.0)


def oracle_sum_rate(sc: SchemeCovariance) -> float:
    """Covariance-oracle value of the scheme's sum-rate; matches ``sum_rate`` of the closed form.

    This is the layered evaluation; ``oracle_joint_sum_rate`` gives the joint bound, which is never smaller.
    """
    return oracle_layered_sum_rate(sc)


def oracle_joint_sum_rate(sc: SchemeCovariance) -> float:
    """I(Y;U,V1,V2) - I(U,V1,V2;S0,S1,S2), by log-det."""
    g = sc.joint
    value = gaussian_mutual_information(g, "Y", _W) - gaussian_mutual_information(g, _W, _STATES)
    return max(value, 0.0)
