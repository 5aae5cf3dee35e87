# expect: 0
ring Q[x,y,z];
module M = coker [[x*y, x*z]] graded;
seq f = [y, z];
seq h = [x, y];
module F = free 1 graded;
theorem f on M;
theorem h on F;
koszul f on M;
