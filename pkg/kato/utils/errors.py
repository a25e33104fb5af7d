"""
Exception hierarchy shared by every kato module

Validation failures derive from ValueError, failures of exact or numeric
arithmetic from ArithmeticError, and a runaway induction from RuntimeError.
All of them derive from KatoError so the command line can map them to one exit code.
"""


class KatoError(Exception):
    r"""Base class of all kato errors"""


class InvalidInput(KatoError, ValueError):
    r"""Input rejected by a precondition check"""


class InvalidSignature(InvalidInput):
    pass


class NotFactorable(InvalidInput):
    pass


class WordMismatch(InvalidInput):
    pass


class EmptyChain(InvalidInput):
    pass


class NotTwisted(InvalidInput):
    pass


class NonUnitConstant(InvalidInput):
    pass


class NonVanishingSubstituent(InvalidInput):
    pass


class ParameterMismatch(InvalidInput):
    pass


class InvalidGerm(InvalidInput):
    pass


class ModeMismatch(InvalidInput):
    pass


class ReducibleMinpoly(InvalidInput):
    pass


class KatoArithmeticError(KatoError, ArithmeticError):
    r"""Arithmetic that cannot be carried out in the requested scalar domain"""


class FractionalPower(KatoArithmeticError):
    pass


class NonIntegerExponent(KatoArithmeticError):
    pass


class SingularSystem(KatoArithmeticError):
    pass


class Indeterminate(KatoArithmeticError):
    pass


class OrbitOverflow(KatoArithmeticError):
    pass


class NonTerminating(KatoError, RuntimeError):
    pass
