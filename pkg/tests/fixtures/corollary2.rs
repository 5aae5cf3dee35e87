# expect: 0
ring Q[x,y];
module F = free 1 graded;
seq f = [x, y];
seq g = [x + y, x*y];
corollary2 f g on F;
