"""
Class groups from reduced forms
===============================

Ideal classes of an imaginary quadratic field are represented by reduced
binary quadratic forms (a, b, c).  Composition of forms is the group law.
"""

from omegaquad import class_group_structure, class_number_real, compose, fundamental_unit, genus_data, order_of_prime_form
from omegaquad.forms import prime_form

s = class_group_structure(-103)
print(f"h(-103) = {s.h}, structure {s.elementary_divisors}")
print("reduced forms:", ", ".join(map(str, s.forms)))

# The prime above 2 generates the whole group here.
q2 = prime_form(-103, 2)
x = q2
powers = [q2]
for _ in range(4):
    x = compose(x, q2)
    powers.append(x)
print("powers of", q2, "->", ", ".join(map(str, powers)))
print("order of the norm-2 class:", order_of_prime_form(-103, 2))

# Non-cyclic example, with its 2-rank from genus theory.
s = class_group_structure(-120)
print(f"Cl(-120) = {s.elementary_divisors}, generators {', '.join(map(str, s.generators))}, 2-rank {genus_data(-120).two_rank}")

# Real fields: cycles of reduced indefinite forms, and the fundamental unit.
for D in (13, 40, 229):
    d = D if D % 4 == 1 else D // 4
    print(f"h({D}) = {class_number_real(D)}, unit {fundamental_unit(d)}")
