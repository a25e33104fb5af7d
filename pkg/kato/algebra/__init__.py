from kato.algebra.scalars import (
    ComplexField,
    NumberField,
    NumberFieldElement,
    ScalarField,
    make_field,
    root_of_unity,
    root_power,
)
from kato.algebra.series import TruncSeries2
