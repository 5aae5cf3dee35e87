# expect: 0
option field gf:32003;
ring Q[x,y,z];
module M = coker [[y*(x-1), y*z]];
seq g = [x, z];
prime m = [x, y, z];
prime shifted = [x - 1, y, z];
prime q = [y];
check g on M;
dim M;
local-depth M at m;
local-depth M at shifted;
local-depth M at q;
