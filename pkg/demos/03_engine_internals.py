"""Walk the exclusion engine by hand, step by step.

For 5^x + 3 = 2^y the machinery goes like this: a bounded initial
search finds (1, 3) and (3, 7).  To rule out y >= 8, reduce the
equation modulo 2^8 = 256; that forces 5^x = 253 (mod 256), which pins
x to a single residue class mod 64.  No contradiction yet, so hunt for
a prime P = 64n + 1 where the finitely many possible values of
5^x + 3 mod P all miss the powers of 2.  P = 257 works, closing the
proof, and y < 8 leaves a seven-case enumeration.
"""

from expodio import EquationInstance, Mode, final_enumeration, initial_search, magic_prime_search
from expodio.engine import exclusion_step, make_candidate

instance = EquationInstance(5, 3, 2)

found = initial_search(instance, ceiling=1 << 64)
print(f"initial search below 2^64: {found}")

# attack y >= 8 with the prime factor 2 of c = 2
candidate = make_candidate(instance, Mode.FORWARD, p=2, t=8)
print(f"queue entry: modulus {candidate.p}^{candidate.k} = {candidate.key}")

step = exclusion_step(instance, candidate)
con = step.constraint
print(f"exclusion step: {step.kind.value}")
print(f"  forced congruence: 5^x = {con.source_target} (mod {con.source_modulus})")
print(f"  hence {con.variable} = {con.residue} (mod {con.period})")

witness = magic_prime_search(instance, con)
print(f"magic prime found: {witness.prime}")
print(f"  exponent classes lift to {witness.lifted_residues} (mod {witness.lifted_period})")
print(f"  5^x mod {witness.prime} is one of   {witness.power_values}")
print(f"  so 2^y mod {witness.prime} would be {witness.shifted_values}")
print(f"  powers of 2 mod {witness.prime} form a cycle of length {witness.other_side_order},")
print(f"  and none of those values are in it: disjoint={witness.disjoint}")

# the contradiction proves y < 8; enumerate the rest exactly
print(f"enumerating y < 8: {final_enumeration(instance, 'y', 8)}")
