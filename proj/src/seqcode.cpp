#include "nsplab/seqcode.hpp"

#include <algorithm>
#include <stdexcept>

#include "nsplab/type.hpp"

namespace nsplab {

Nat seq_empty() { return Nat(0); }

Nat seq_add(const Nat& code, const Nat& z) { return cantor_pair(code, z) + 1; }

Nat seq_encode(const std::vector<Nat>& xs) {
  Nat c = 0;
  for (const Nat& x : xs) c = seq_add(c, x);
  return c;
}

std::vector<Nat> seq_decode(const Nat& code) {
  std::vector<Nat> out;
  Nat c = code, a, b;
  while (c != 0) {
    cantor_unpair(c - 1, a, b);
    out.push_back(b);
    c = a;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Nat seq_len(const Nat& code) {
  Nat n = 0, c = code, a, b;
  while (c != 0) {
    cantor_unpair(c - 1, a, b);
    ++n;
    c = a;
  }
  return n;
}

Nat seq_index(const Nat& code, const Nat& i) {
  std::vector<Nat> xs = seq_decode(code);
  if (i >= Nat(static_cast<long>(xs.size())))
    throw std::out_of_range("seq_index: index past end of sequence");
  return xs[i.get_ui()];
}

Nat basic_at(const Nat& code, const Nat& j, const Nat& i) {
  if (i < seq_len(code)) return seq_index(code, i);
  return j;
}

// ---------------------------------------------------------------------------
// Term-level programs.
//
// Everything below recurses over nat state only. rec-str at nat is linear
// under the strict byval rule, whereas rec-str at a product type re-evaluates
// its recursive chain once per projection of the byval bracket, which
// compounds exponentially. Two-value loop states are therefore avoided:
// Cantor unpairing goes through the closed form (diagonal search on triangle
// numbers), and len freezes its count into the loop state once the code
// bottoms out.
//
// Substitution is textual, so a computed subterm written twice is computed
// twice. Reused intermediates therefore go through a strict let, itself a
// T0str program: rec-str e (\x m. body) 1 forces e to a numeral once and
// substitutes the numeral into body.
//
// The builders are parameterized on the recursion flavour. The strict
// flavour uses rec-str (T0str); the other uses rec (T), whose rule
// substitutes the recursive call textually, so the let degenerates to a
// call-by-name let and value sharing is lost. Both flavours satisfy the same
// recurrence, hence compute the same functions.

namespace {

TermPtr v(const std::string& n, TypePtr t) { return mk_var(n, std::move(t)); }
TermPtr lam(const std::string& n, TypePtr t, TermPtr b) {
  return mk_lam(n, std::move(t), std::move(b));
}

TypePtr nn() { return ty_nat(); }

struct Prog {
  bool strict;

  TermPtr rec0() const { return strict ? mk_rec_str(nn()) : mk_rec(nn()); }

  // let x = e in body(x), with fresh names so nested lets cannot capture.
  TermPtr let_(TermPtr e, const std::function<TermPtr(TermPtr)>& body) const {
    static int ctr = 0;
    std::string x = "_l" + std::to_string(ctr);
    std::string m = "_m" + std::to_string(ctr);
    ++ctr;
    TermPtr step = lam(x, nn(), lam(m, nn(), body(v(x, nn()))));
    return mk_apps(rec0(), {std::move(e), step, mk_num(1)});
  }

  // plus a b = rec a (\x m. suc x) b
  TermPtr plus_of(TermPtr a, TermPtr b) const {
    TermPtr step =
        lam("x", nn(), lam("m", nn(), mk_app(mk_suc(), v("x", nn()))));
    return mk_apps(rec0(), {std::move(a), step, std::move(b)});
  }

  // monus a b = rec a (\x m. pre x) b
  TermPtr monus_of(TermPtr a, TermPtr b) const {
    TermPtr step =
        lam("x", nn(), lam("m", nn(), mk_app(mk_pre(), v("x", nn()))));
    return mk_apps(rec0(), {std::move(a), step, std::move(b)});
  }

  // lt a b: zero iff a < b.
  TermPtr lt_of(TermPtr a, TermPtr b) const {
    return monus_of(mk_app(mk_suc(), std::move(a)), std::move(b));
  }

  // tri t = t(t+1)/2 = rec 0 (\x m. plus x (suc m)) t
  TermPtr tri_of(TermPtr t) const {
    TermPtr step = lam("x", nn(), lam("m", nn(),
        plus_of(v("x", nn()), mk_app(mk_suc(), v("m", nn())))));
    return mk_apps(rec0(), {mk_num(0), step, std::move(t)});
  }

  // cantor a b = tri(a+b) + b
  TermPtr cantor_of(TermPtr a, TermPtr b) const {
    return plus_of(tri_of(plus_of(std::move(a), b)), b);
  }

  // diag n = the largest d with tri(d) <= n, by a frozen scan: the state is
  // K + x while searching upward from x = 0 (K = n+1), and drops to the bare
  // answer once tri(x+1) exceeds n. n iterations always suffice.
  TermPtr diag_of(TermPtr n) const {
    return let_(std::move(n), [this](TermPtr nv) {
      TermPtr K = mk_app(mk_suc(), nv);
      TermPtr t = v("t", nn());
      TermPtr x = monus_of(t, K);
      TermPtr step = lam("t", nn(), lam("m", nn(),
          mk_apps(mk_ifzero(),
                  {lt_of(t, K), t,
                   mk_apps(mk_ifzero(),
                           {monus_of(tri_of(mk_app(mk_suc(), x)), nv),
                            mk_app(mk_suc(), t), x})})));
      TermPtr raw = mk_apps(rec0(), {K, step, nv});
      return let_(raw, [this, K](TermPtr r) {
        return mk_apps(mk_ifzero(), {lt_of(r, K), r, monus_of(r, K)});
      });
    });
  }

  // Components of the Cantor unpairing of n: with d = diag n,
  // snd = n - tri(d) and fst = d - snd.
  TermPtr csnd_of(TermPtr n) const {
    return let_(std::move(n), [this](TermPtr nv) {
      return monus_of(nv, tri_of(diag_of(nv)));
    });
  }
  TermPtr cfst_of(TermPtr n) const {
    return let_(std::move(n), [this](TermPtr nv) {
      return let_(diag_of(nv), [this, nv](TermPtr d) {
        return monus_of(d, monus_of(nv, tri_of(d)));
      });
    });
  }

  // drop c = code of the sequence without its last element (drop 0 = 0);
  // last c = that last element.
  TermPtr drop_of(TermPtr c) const {
    return cfst_of(mk_app(mk_pre(), std::move(c)));
  }
  TermPtr last_of(TermPtr c) const {
    return csnd_of(mk_app(mk_pre(), std::move(c)));
  }

  // len x: scan with state K + (code still to be consumed), K = x+1; when
  // the next drop hits 0 the state freezes to the element count m+1 (< K).
  // x iterations suffice since len x <= x.
  TermPtr len_of(TermPtr x) const {
    return let_(std::move(x), [this](TermPtr xv) {
      TermPtr K = mk_app(mk_suc(), xv);
      TermPtr s = v("s", nn());
      TermPtr m = v("m", nn());
      TermPtr step = lam("s", nn(), lam("m", nn(),
          mk_apps(mk_ifzero(),
                  {lt_of(s, K), s,
                   let_(drop_of(monus_of(s, K)), [this, K, m](TermPtr d) {
                     return mk_apps(mk_ifzero(),
                                    {d, mk_app(mk_suc(), m), plus_of(K, d)});
                   })})));
      TermPtr s0 = mk_apps(mk_ifzero(), {xv, mk_num(0), plus_of(K, xv)});
      return mk_apps(rec0(), {s0, step, xv});
    });
  }

  // peel x k: drop the last element k times.
  TermPtr peel_of(TermPtr x, TermPtr k) const {
    TermPtr step = lam("c", nn(), lam("m", nn(), drop_of(v("c", nn()))));
    return mk_apps(rec0(), {std::move(x), step, std::move(k)});
  }

  // ----- the exported closed programs -----

  TermPtr plus_term() const {
    return lam("a", nn(), lam("b", nn(), plus_of(v("a", nn()), v("b", nn()))));
  }

  TermPtr monus_term() const {
    return lam("a", nn(),
               lam("b", nn(), monus_of(v("a", nn()), v("b", nn()))));
  }

  // lt a b = (a+1) -' b: zero exactly when a < b.
  TermPtr lt_term() const {
    return lam("a", nn(), lam("b", nn(), lt_of(v("a", nn()), v("b", nn()))));
  }

  // eq a b = (a -' b) + (b -' a): zero exactly when a = b.
  TermPtr eq_term() const {
    return lam("a", nn(), lam("b", nn(),
        plus_of(monus_of(v("a", nn()), v("b", nn())),
                monus_of(v("b", nn()), v("a", nn())))));
  }

  TermPtr len_term() const { return lam("x", nn(), len_of(v("x", nn()))); }

  // add x z = cantor(x, z) + 1
  TermPtr add_term() const {
    return lam("x", nn(), lam("z", nn(),
        mk_app(mk_suc(), cantor_of(v("x", nn()), v("z", nn())))));
  }

  // basic x j i = if i < len x then element i of x else j. Element i is the
  // last element after peeling (len x - 1 - i) times.
  TermPtr basic_term() const {
    TermPtr x = v("x", nn());
    TermPtr j = v("j", nn());
    TermPtr i = v("i", nn());
    TermPtr body = let_(len_of(x), [this, x, j, i](TermPtr L) {
      TermPtr elem = last_of(peel_of(x, monus_of(mk_app(mk_pre(), L), i)));
      return mk_apps(mk_ifzero(), {lt_of(i, L), elem, j});
    });
    return lam("x", nn(), lam("j", nn(), lam("i", nn(), body)));
  }

  // leaf x = 2x + 1
  TermPtr leaf_term() const {
    return lam("x", nn(),
               mk_app(mk_suc(), plus_of(v("x", nn()), v("x", nn()))));
  }
};

}  // namespace

TermPtr plus_str() { return Prog{true}.plus_term(); }
TermPtr monus_str() { return Prog{true}.monus_term(); }
TermPtr lt_term() { return Prog{true}.lt_term(); }
TermPtr eq_term() { return Prog{true}.eq_term(); }
TermPtr len_term() { return Prog{true}.len_term(); }
TermPtr add_term() { return Prog{true}.add_term(); }
TermPtr basic_term() { return Prog{true}.basic_term(); }
TermPtr leaf_term() { return Prog{true}.leaf_term(); }

TermPtr plus_rec() { return Prog{false}.plus_term(); }
TermPtr monus_rec() { return Prog{false}.monus_term(); }
TermPtr lt_rec() { return Prog{false}.lt_term(); }
TermPtr eq_rec() { return Prog{false}.eq_term(); }
TermPtr len_rec() { return Prog{false}.len_term(); }
TermPtr add_rec() { return Prog{false}.add_term(); }
TermPtr basic_rec() { return Prog{false}.basic_term(); }
TermPtr leaf_rec() { return Prog{false}.leaf_term(); }

TermPtr strict_let(TermPtr e, const std::function<TermPtr(TermPtr)>& body) {
  return Prog{true}.let_(std::move(e), body);
}

}  // namespace nsplab
