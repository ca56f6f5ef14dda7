"""Two-sided max-plus eigenproblem A x = lam + B x solved by level sets of s(lam)."""
