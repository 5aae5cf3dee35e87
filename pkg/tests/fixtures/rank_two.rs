# expect: 1
ring Q[x,y,z];
module M = coker [[x, y, 0], [0, x, z]] graded (0, 0);
seq f = [z, y];
check f on M;
strong-check f on M;
depth M;
