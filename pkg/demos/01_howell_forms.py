"""Row spans over Z/n: Howell form, membership, kernels and abelian invariants."""
from torsion_kit.linalg import abelian_invariants, howell_form, kernel, solve

n = 12
rows = [[4, 6], [2, 0], [0, 9]]
H = howell_form(rows, n, 2)
print("Howell rows of the span:", H.rows)
print("span has", H.cardinality(), "elements")

# two generating sets, one canonical form
other = [[2, 6], [0, 3]]
print("same span as", other, "->", howell_form(other, n, 2) == H)

for b in [(6, 3), (1, 0)]:
    x = solve(rows, b, n)
    print(f"solve x*A = {b}:", x)

K = kernel(rows, n, 2)
print("left kernel rows:", K.rows, "order", K.cardinality())

# Z^2 / span of the rows, as an abelian group
print("(Z/12)^2 / span ~", " x ".join(f"Z/{d}" for d in abelian_invariants(rows, n, 2)) or "0")
