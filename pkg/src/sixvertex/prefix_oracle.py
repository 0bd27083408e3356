"""Independent re-evaluation of the coefficient functions from prefix-form
formula text.

The coefficient formulas are the most transcription-error-prone part of the
toolkit, so each one is transcribed a second time into a tiny s-expression
language and evaluated by the interpreter below.  Agreement between the two
transcriptions is a build gate exercised by the test suite.
"""

from __future__ import annotations

import itertools

import numpy as np


def tokenize(src: str):
    return src.replace("(", " ( ").replace(")", " ) ").split()


def parse(tokens):
    tok = tokens.pop(0)
    if tok == "(":
        out = []
        while tokens[0] != ")":
            out.append(parse(tokens))
        tokens.pop(0)
        return out
    if tok == ")":
        raise SyntaxError("unexpected )")
    try:
        return int(tok)
    except ValueError:
        return tok


def read(src: str):
    tokens = tokenize(src)
    tree = parse(tokens)
    if tokens:
        raise SyntaxError("trailing tokens in formula text")
    return tree


class Interp:
    """Evaluator for the formula language.

    Environment keys: 'vars' (tuple of complex), 'mu' (tuple of complex),
    'gamma' (complex), plus any integer / list bindings the formula needs.
    """

    def __init__(self, vars_, mu, gamma, **bindings):
        self.vars = tuple(vars_)
        self.mu = tuple(mu)
        self.gamma = complex(gamma)
        base = {
            "gamma": self.gamma,
            "n": len(self.vars) - 1,
            "nv": len(self.vars),
        }
        base.update(bindings)
        self.env = base

    def run(self, tree, extra=None):
        env = dict(self.env)
        if extra:
            env.update(extra)
        return self._eval(tree, env)

    def _eval(self, node, env):
        if isinstance(node, int):
            return node
        if isinstance(node, str):
            if node in env:
                return env[node]
            raise NameError(f"unbound symbol {node!r}")
        head, *args = node
        if head == "+":
            return sum(self._eval(a, env) for a in args)
        if head == "*":
            out = 1
            for a in args:
                out = out * self._eval(a, env)
            return out
        if head == "/":
            return self._eval(args[0], env) / self._eval(args[1], env)
        if head == "-":
            if len(args) == 1:
                return -self._eval(args[0], env)
            return self._eval(args[0], env) - self._eval(args[1], env)
        if head == "a":
            return np.sinh(self._eval(args[0], env) + self.gamma)
        if head == "b":
            return np.sinh(self._eval(args[0], env))
        if head == "c":
            return np.sinh(self.gamma)
        if head == "v":
            return self.vars[self._eval(args[0], env)]
        if head == "mu":
            return self.mu[self._eval(args[0], env) - 1]
        if head == "sites":
            return list(range(1, len(self.mu) + 1))
        if head == "range":
            lo = self._eval(args[0], env)
            hi = self._eval(args[1], env)
            return list(range(lo, hi + 1))
        if head == "omit":
            base = self._eval(args[0], env)
            drop = {self._eval(a, env) for a in args[1:]}
            return [x for x in base if x not in drop]
        if head == "diff":
            base = self._eval(args[0], env)
            drop = set(self._eval(args[1], env))
            return [x for x in base if x not in drop]
        if head == "elem":
            seq = self._eval(args[0], env)
            return seq[self._eval(args[1], env) - 1]
        if head == "with":
            binds, body = args
            new = dict(env)
            for sym, expr in binds:
                new[sym] = self._eval(expr, env)
            return self._eval(body, new)
        if head in ("sum", "prod"):
            sym, setexpr, body = args
            acc = 0 if head == "sum" else 1
            for val in self._eval(setexpr, env):
                sub = dict(env)
                sub[sym] = val
                term = self._eval(body, sub)
                acc = acc + term if head == "sum" else acc * term
            return acc
        if head == "prod-pairs":
            sym_r, sym_s, setexpr, body = args
            seq = self._eval(setexpr, env)
            acc = 1
            for p in range(len(seq)):
                for q in range(p + 1, len(seq)):
                    sub = dict(env)
                    sub[sym_r] = seq[p]
                    sub[sym_s] = seq[q]
                    acc = acc * self._eval(body, sub)
            return acc
        if head == "sum-subsets":
            sym, setexpr, sizeexpr, body = args
            seq = self._eval(setexpr, env)
            size = self._eval(sizeexpr, env)
            acc = 0
            for combo in itertools.combinations(seq, size):
                sub = dict(env)
                sub[sym] = list(combo)
                acc = acc + self._eval(body, sub)
            return acc
        if head == "sum-perms":
            sym, setexpr, body = args
            seq = self._eval(setexpr, env)
            acc = 0
            for perm in itertools.permutations(seq):
                sub = dict(env)
                sub[sym] = list(perm)
                acc = acc + self._eval(body, sub)
            return acc
        raise NameError(f"unknown form {head!r}")


GAMMA_SRC = """
(* (/ (c) (b (- (v k) (v j))))
   (prod t (omit (range 1 n) i)
     (* (/ (a (- (v k) (v t))) (b (- (v k) (v t))))
        (/ (a (- (v t) (v j))) (b (- (v t) (v j)))))))
""".strip()

OMEGA_SRC = """
(* (/ (c) (a (- (v j) (v 0))))
   (/ (c) (a (- (v 0) (v i))))
   (/ (a (- (v j) (v i))) (b (- (v j) (v i))))
   (prod t (omit (range 0 n) i j)
     (* (/ (a (- (v j) (v t))) (b (- (v j) (v t))))
        (/ (a (- (v t) (v i))) (b (- (v t) (v i)))))))
""".strip()

M_SRC = f"""
(+ (with ((j 0) (k i))
     (* {GAMMA_SRC}
        (prod q (sites) (* (a (- (v 0) (mu q))) (b (- (v i) (mu q)))))))
   (with ((j i) (k 0))
     (* {GAMMA_SRC}
        (prod q (sites) (* (a (- (v i) (mu q))) (b (- (v 0) (mu q))))))))
""".strip()

N_SRC = f"""
(+ (* {OMEGA_SRC}
      (prod q (sites) (* (a (- (v i) (mu q))) (b (- (v j) (mu q))))))
   (with ((i j) (j i))
     (* {OMEGA_SRC}
        (prod q (sites) (* (a (- (v i) (mu q))) (b (- (v j) (mu q))))))))
""".strip()

V_SRC = """
(sum-subsets J I m
  (* (prod li (range 1 m)
       (* (prod q (sites) (a (- (v (elem J li)) (mu q))))
          (prod t (diff (range 0 (- nv 1)) I)
            (/ (a (- (v t) (v (elem J li)))) (b (- (v t) (v (elem J li))))))))
     (sum-perms K (diff I J)
       (* (prod li (range 1 m)
            (* (prod q (sites) (b (- (v (elem K li)) (mu q))))
               (/ (c) (b (- (v (elem J li)) (v (elem K li)))))
               (prod t (diff (range 0 (- nv 1)) I)
                 (/ (a (- (v (elem K li)) (v t))) (b (- (v (elem K li)) (v t)))))))
          (prod-pairs r s (range 1 m)
            (* (/ (a (- (v (elem K r)) (v (elem K s))))
                  (b (- (v (elem K r)) (v (elem K s)))))
               (/ (a (- (v (elem K r)) (v (elem J s))))
                  (b (- (v (elem K r)) (v (elem J s)))))
               (/ (a (+ (- (v (elem K s)) (v (elem J r))) gamma))
                  (b (- (v (elem K s)) (v (elem J r)))))))))))
""".strip()

_TREES = {name: read(src) for name, src in
          [("gamma", GAMMA_SRC), ("omega", OMEGA_SRC), ("m", M_SRC),
           ("n", N_SRC), ("v", V_SRC)]}


def oracle_gamma(i, j, k, vars_, params):
    it = Interp(vars_, params.mu, params.gamma, i=i, j=j, k=k)
    return complex(it.run(_TREES["gamma"]))


def oracle_omega(i, j, vars_, params):
    it = Interp(vars_, params.mu, params.gamma, i=i, j=j)
    return complex(it.run(_TREES["omega"]))


def oracle_m(i, vars_, params):
    it = Interp(vars_, params.mu, params.gamma, i=i)
    return complex(it.run(_TREES["m"]))


def oracle_n(j, i, vars_, params):
    it = Interp(vars_, params.mu, params.gamma, i=i, j=j)
    return complex(it.run(_TREES["n"]))


def oracle_v(m, indices, vars_, params):
    if m == 0:
        return 1.0 + 0j
    it = Interp(vars_, params.mu, params.gamma, m=m, I=list(indices))
    return complex(it.run(_TREES["v"]))
