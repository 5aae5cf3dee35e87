# expect: 0
ring Q[x,y];
module M = coker [[x*y]] graded;
ideal m = [x, y];
ext 0 of m on M;
ext 1 of m on M;
