# expect: 3
ring Q[x,y];
module M = free 1;
check f on M;
