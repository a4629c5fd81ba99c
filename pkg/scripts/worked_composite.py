"""The polynomial X + X^2 composed with X^2, evaluated at a 2-element set, in both orders."""

from genbicat import suites

pq, qp = suites.worked_composite_example()
print(f"(X + X^2) then square: {pq} elements")
print(f"X^2 substituted into X + X^2 (X^2 + X^4): {qp} elements")
