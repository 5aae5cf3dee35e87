# expect: 1
ring Q[x,y];
module M = coker [[x^2, x*y]] graded;
seq f = [y];
sop f on M;
