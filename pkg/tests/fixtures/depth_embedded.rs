# expect: 0
ring Q[x,y];
module M = coker [[x^2, x*y]] graded;
depth M;
ass M;
dim M;
