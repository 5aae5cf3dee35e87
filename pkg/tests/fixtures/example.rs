# expect: 1
# the motivating example: (z, x) is regular but not strongly regular
ring Q[x,y,z] order grevlex;
module M = coker [[y*(x-1), y*z]];
seq f = [z, x];
seq g = [x, z];
check f on M;
check g on M;
