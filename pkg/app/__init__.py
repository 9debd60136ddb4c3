# Poisson centralizer toolkit
