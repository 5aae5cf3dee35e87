# expect: 0
# a non-monomial quotient: the depth criteria run on caller-supplied primes
ring Q[x,y,z];
module M = coker [[y*(x-1), y*z]];
seq f = [y + z];
prime a = [x - 1, y, z];
prime b = [x, y, z];
prime c = [y];
theorem f on M with a b c;
