"""Classification of isometries of the sphere, Euclidean space and hyperbolic space."""
