"""Exception types shared by the negbeta modules.

Every error carries a short machine-readable ``code`` so the CLI can
report it in JSON output.
"""


class NegBetaError(Exception):
    code = "error"

    def __init__(self, message="", **data):
        super().__init__(message)
        self.data = data


class NoRootInInterval(NegBetaError):
    code = "no_root_in_interval"


class BetaOutOfRange(NegBetaError):
    code = "beta_out_of_range"


class OutOfDomain(NegBetaError):
    code = "out_of_domain"


class Undecidable(NegBetaError):
    """A floor or comparison could not be certified at the precision cap."""
    code = "undecidable"


class CapExceeded(NegBetaError):
    code = "cap_exceeded"


class NonBinaryInput(NegBetaError):
    code = "non_binary_input"


class NotApplicable(NegBetaError):
    code = "not_applicable"


class CapInconclusive(NegBetaError):
    code = "cap_inconclusive"


class NotInSupportLanguage(NegBetaError):
    code = "not_in_support_language"


class NotAdmissible(NegBetaError):
    code = "not_admissible"


class TailBoundUnavailable(NegBetaError):
    code = "tail_bound_unavailable"


class EmptyCode(NegBetaError):
    code = "empty_code"


class Malformed(NegBetaError):
    code = "malformed"


class NotSelfAdmissible(NegBetaError):
    code = "not_self_admissible"
