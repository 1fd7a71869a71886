# directed 3-cycle
domain a b c
relation E 2
a b
b c
c a
end
