# expect: 0
ring GF(32003)[x,y];
module M = coker [[x*y]] graded;
depth M;
ass M;
