# directed path a -> b -> c
domain a b c
relation E 2
a b
b c
end
