"""Integer polynomials as coefficient tuples ``(c_0, c_1, ...)``."""


def trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return tuple(p) if p else (0,)


def add(p, q):
    n = max(len(p), len(q))
    return trim(
        (p[k] if k < len(p) else 0) + (q[k] if k < len(q) else 0) for k in range(n)
    )


def mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def shift(p, k):
    """Multiply by ``t**k``."""
    return trim((0,) * k + tuple(p))


def evaluate(p, t):
    return sum(c * t ** k for k, c in enumerate(p))


def product(polys):
    out = (1,)
    for p in polys:
        out = mul(out, p)
    return out


def from_terms(terms):
    """Build from ``{degree: coefficient}``."""
    if not terms:
        return (0,)
    out = [0] * (max(terms) + 1)
    for k, c in terms.items():
        out[k] += c
    return trim(out)


def to_str(p, var="t"):
    parts = []
    for k, c in enumerate(p):
        if c == 0:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            coef = "" if c == 1 else str(c)
            mon = var if k == 1 else f"{var}^{k}"
            parts.append(coef + mon)
    return " + ".join(parts) if parts else "0"
