# expect: 0
ring Q[x,y];
module F = free 1 graded;
depth F;
dim F;
