# expect: 0
ring Q[x,y];
module M = coker [[x*y]] graded;
seq f = [x - y];
sop f on M;
