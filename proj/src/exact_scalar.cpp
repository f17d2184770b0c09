#include "geolab/exact_scalar.hpp"

#include "geolab/detail/rat_interval.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cassert>
#include <optional>
#include <sstream>

namespace geolab {

namespace {

using detail::RatInterval;
using detail::Tower;
using detail::TowerPtr;
using Coords = std::vector<Rat>;

const TowerPtr& empty_tower() {
    static const TowerPtr t = std::make_shared<Tower>();
    return t;
}

std::size_t level_of(std::size_t n) {
    std::size_t l = 0;
    while ((std::size_t{1} << l) < n) ++l;
    return l;
}

bool all_zero(const Rat* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != 0) return false;
    return true;
}

Coords zeros(std::size_t n) { return Coords(n, Rat(0)); }

Coords lift(const Coords& c, std::size_t to_size) {
    Coords r = c;
    r.resize(to_size, Rat(0));
    return r;
}

// ---- raw arithmetic over a fixed tower (no normalization) ----

Coords mul_raw(const Tower& T, const Rat* a, const Rat* b, std::size_t level) {
    if (level == 0) return Coords{a[0] * b[0]};
    std::size_t h = std::size_t{1} << (level - 1);
    Coords t00 = mul_raw(T, a, b, level - 1);
    Coords t11 = mul_raw(T, a + h, b + h, level - 1);
    const Coords& gamma = T.gens[level - 1];
    Coords t11g = mul_raw(T, t11.data(), gamma.data(), level - 1);
    Coords t01 = mul_raw(T, a, b + h, level - 1);
    Coords t10 = mul_raw(T, a + h, b, level - 1);
    Coords r(std::size_t{1} << level);
    for (std::size_t i = 0; i < h; ++i) {
        r[i] = t00[i] + t11g[i];
        r[h + i] = t01[i] + t10[i];
    }
    return r;
}

Coords inv_raw(const Tower& T, const Rat* b, std::size_t level) {
    if (level == 0) {
        assert(b[0] != 0);
        return Coords{Rat(1) / b[0]};
    }
    std::size_t h = std::size_t{1} << (level - 1);
    const Rat* p = b;
    const Rat* q = b + h;
    if (all_zero(q, h)) {
        Coords ip = inv_raw(T, p, level - 1);
        Coords r(std::size_t{1} << level, Rat(0));
        std::copy(ip.begin(), ip.end(), r.begin());
        return r;
    }
    Coords pp = mul_raw(T, p, p, level - 1);
    Coords qq = mul_raw(T, q, q, level - 1);
    const Coords& gamma = T.gens[level - 1];
    Coords qqg = mul_raw(T, qq.data(), gamma.data(), level - 1);
    Coords d(h);
    for (std::size_t i = 0; i < h; ++i) d[i] = pp[i] - qqg[i];
    // d = 0 would mean the generator is a square in its prefix field,
    // which tower construction rules out
    assert(!all_zero(d.data(), h));
    Coords id = inv_raw(T, d.data(), level - 1);
    Coords c0 = mul_raw(T, p, id.data(), level - 1);
    Coords c1 = mul_raw(T, q, id.data(), level - 1);
    Coords r(std::size_t{1} << level);
    for (std::size_t i = 0; i < h; ++i) {
        r[i] = c0[i];
        r[h + i] = -c1[i];
    }
    return r;
}

// Symbolic square root inside the field (never extends the tower).
std::optional<Coords> ssqrt_raw(const Tower& T, const Rat* a, std::size_t level) {
    if (level == 0) {
        auto r = rat_exact_sqrt(a[0]);
        if (!r) return std::nullopt;
        return Coords{*r};
    }
    std::size_t h = std::size_t{1} << (level - 1);
    const Rat* p = a;
    const Rat* q = a + h;
    const Coords& gamma = T.gens[level - 1];
    if (all_zero(q, h)) {
        // x in the prefix field, or x = v*sqrt(gamma) with v^2 = p/gamma
        if (auto r = ssqrt_raw(T, p, level - 1)) {
            Coords out(std::size_t{1} << level, Rat(0));
            std::copy(r->begin(), r->end(), out.begin());
            return out;
        }
        Coords ig = inv_raw(T, gamma.data(), level - 1);
        Coords v2 = mul_raw(T, p, ig.data(), level - 1);
        if (auto v = ssqrt_raw(T, v2.data(), level - 1)) {
            Coords out(std::size_t{1} << level, Rat(0));
            std::copy(v->begin(), v->end(), out.begin() + h);
            return out;
        }
        return std::nullopt;
    }
    // x = u + v*sqrt(gamma): u^2 and gamma*v^2 are roots of
    // t^2 - p t + gamma q^2 / 4, so s = sqrt(p^2 - gamma q^2) must exist
    Coords pp = mul_raw(T, p, p, level - 1);
    Coords qq = mul_raw(T, q, q, level - 1);
    Coords qqg = mul_raw(T, qq.data(), gamma.data(), level - 1);
    Coords d(h);
    for (std::size_t i = 0; i < h; ++i) d[i] = pp[i] - qqg[i];
    auto s = ssqrt_raw(T, d.data(), level - 1);
    if (!s) return std::nullopt;
    for (int sgn = 0; sgn < 2; ++sgn) {
        Coords u2(h);
        for (std::size_t i = 0; i < h; ++i) {
            Rat si = sgn == 0 ? (*s)[i] : Rat(-(*s)[i]);
            u2[i] = (p[i] + si) / 2;
        }
        auto u = ssqrt_raw(T, u2.data(), level - 1);
        if (!u || all_zero(u->data(), h)) continue;
        Coords two_u(h);
        for (std::size_t i = 0; i < h; ++i) two_u[i] = 2 * (*u)[i];
        Coords inv2u = inv_raw(T, two_u.data(), level - 1);
        Coords v = mul_raw(T, q, inv2u.data(), level - 1);
        Coords cand(std::size_t{1} << level);
        for (std::size_t i = 0; i < h; ++i) {
            cand[i] = (*u)[i];
            cand[h + i] = v[i];
        }
        Coords sq = mul_raw(T, cand.data(), cand.data(), level);
        bool ok = true;
        for (std::size_t i = 0; i < (std::size_t{1} << level) && ok; ++i)
            ok = sq[i] == a[i];
        if (ok) return cand;
    }
    return std::nullopt;
}

// Scales a radicand to integer coordinates with squarefree content.
// Returns the scaled coords and the factor f with sqrt(a) = f*sqrt(scaled).
std::pair<Coords, Rat> canon_radicand(const Coords& a) {
    Int lcm_den(1);
    for (const Rat& x : a)
        if (x != 0) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den().get_mpz_t());
    Int gcd_num(0);
    for (const Rat& x : a) {
        if (x == 0) continue;
        Int scaled_num = x.get_num() * (lcm_den / x.get_den()) * lcm_den;
        mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), scaled_num.get_mpz_t());
    }
    assert(gcd_num > 0);
    Int sf = squarefree_part(gcd_num);
    Int square = gcd_num / sf;
    Int s = isqrt_floor(square);
    // a * (lcm/s)^2 has integer coords with content sf (squarefree up to
    // the factoring bound)
    Rat c(lcm_den, s);
    c.canonicalize();
    Coords gen(a.size());
    Rat c2 = c * c;
    for (std::size_t i = 0; i < a.size(); ++i) gen[i] = a[i] * c2;
    Rat f(1);
    f /= c;
    return {std::move(gen), f};
}

int raw_sign(const Tower& T, const Rat* c, std::size_t level);

// Square root in the (mutable) tower: symbolic if possible, otherwise
// appends one canonically scaled generator. Always the nonnegative root.
Coords bsqrt(Tower& T, const Coords& a) {
    std::size_t level = level_of(a.size());
    if (auto r = ssqrt_raw(T, a.data(), level)) {
        if (raw_sign(T, r->data(), level) < 0)
            for (Rat& x : *r) x = -x;
        return *r;
    }
    if (T.depth() >= ExactScalar::kMaxTowerDepth)
        throw Error(ErrorKind::TowerDepthExceeded,
                    "tower depth cap (" + std::to_string(ExactScalar::kMaxTowerDepth) +
                        ") exceeded");
    Coords full = lift(a, std::size_t{1} << T.depth());
    auto [gen, f] = canon_radicand(full);
    T.gens.push_back(std::move(gen));
    Coords r(std::size_t{1} << T.depth(), Rat(0));
    r[std::size_t{1} << (T.depth() - 1)] = f;
    return r;
}

// Product over the root values for the bits of `mask`, at T's current depth.
Coords mask_product(const Tower& T, const std::vector<Coords>& roots, std::size_t mask) {
    std::size_t n = std::size_t{1} << T.depth();
    Coords acc = zeros(n);
    acc[0] = 1;
    for (std::size_t i = 0; mask >> i; ++i) {
        if (!(mask >> i & 1)) continue;
        Coords ri = lift(roots[i], n);
        acc = mul_raw(T, acc.data(), ri.data(), T.depth());
    }
    return acc;
}

// Re-expresses b (tower bT) inside T by adjoining the roots of bT's
// generators one by one; T grows append-only so earlier results lift by
// zero-padding.
Coords embed_into(Tower& T, const Tower& bT, const Coords& bC) {
    std::vector<Coords> roots;
    for (std::size_t j = 0; j < bT.depth(); ++j) {
        const Coords& def = bT.gens[j];
        Coords val = zeros(std::size_t{1} << T.depth());
        for (std::size_t mask = 0; mask < def.size(); ++mask) {
            if (def[mask] == 0) continue;
            Coords prod = mask_product(T, roots, mask);
            prod = lift(prod, std::size_t{1} << T.depth());
            for (std::size_t i = 0; i < prod.size(); ++i) val[i] += def[mask] * prod[i];
        }
        roots.push_back(bsqrt(T, val));
    }
    Coords out = zeros(std::size_t{1} << T.depth());
    for (std::size_t mask = 0; mask < bC.size(); ++mask) {
        if (bC[mask] == 0) continue;
        Coords prod = mask_product(T, roots, mask);
        prod = lift(prod, std::size_t{1} << T.depth());
        for (std::size_t i = 0; i < prod.size(); ++i) out[i] += bC[mask] * prod[i];
    }
    return out;
}

struct Merged {
    Tower tower;
    Coords a;
    Coords b;
};

// ---- square-class canonicalization for rational towers ----

Int class_mul(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return (a / g) * (b / g);
}

// Pairwise-coprime base refining every input (inputs squarefree > 1).
std::vector<Int> coprime_base(const std::vector<Int>& xs) {
    std::vector<Int> base;
    auto add = [&](auto&& self, Int n) -> void {
        if (n <= 1) return;
        for (std::size_t i = 0; i < base.size(); ++i) {
            Int g;
            mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), base[i].get_mpz_t());
            if (g == 1) continue;
            if (g == base[i]) {
                self(self, n / g);
                return;
            }
            Int rest = base[i] / g;
            base.erase(base.begin() + i);
            self(self, g);
            self(self, rest);
            self(self, n);
            return;
        }
        base.push_back(n);
    };
    for (const Int& x : xs) add(add, x);
    std::sort(base.begin(), base.end());
    return base;
}

std::uint64_t class_vector(const Int& d, const std::vector<Int>& base) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < base.size(); ++i)
        if (mpz_divisible_p(d.get_mpz_t(), base[i].get_mpz_t()) != 0) v |= std::uint64_t{1} << i;
    return v;
}

// ---- enclosure (rational intervals) ----

RatInterval enclose_raw(const Tower& T, const Rat* c, std::size_t level, unsigned prec);

RatInterval enclose_root(const Tower& T, std::size_t i, unsigned prec) {
    RatInterval g = enclose_raw(T, T.gens[i].data(), i, prec);
    if (g.hi < 0) g.hi = 0;
    return rsqrt(g, prec);
}

RatInterval enclose_raw(const Tower& T, const Rat* c, std::size_t level, unsigned prec) {
    if (level == 0) return RatInterval::point(c[0]);
    std::size_t h = std::size_t{1} << (level - 1);
    RatInterval lo = enclose_raw(T, c, level - 1, prec);
    if (all_zero(c + h, h)) return lo;
    RatInterval hi = enclose_raw(T, c + h, level - 1, prec);
    RatInterval root = enclose_root(T, level - 1, prec);
    return radd(lo, rmul(hi, root));
}

int raw_sign(const Tower& T, const Rat* c, std::size_t level) {
    if (all_zero(c, std::size_t{1} << level)) return 0;
    if (level == 0) return sgn(c[0]);
    for (unsigned prec = 64; prec <= ExactScalar::kSignPrecisionCap; prec *= 2) {
        RatInterval e = enclose_raw(T, c, level, prec);
        if (e.lo > 0) return 1;
        if (e.hi < 0) return -1;
    }
    throw Error(ErrorKind::PrecisionCapExceeded, "sign refinement exceeded 2^16 bits");
}

} // namespace

// ---- normalization ----

struct ExactScalarOps {
    static Merged merge(const ExactScalar& a, const ExactScalar& b) {
        if (a.tower_ == b.tower_ || *a.tower_ == *b.tower_)
            return Merged{*a.tower_, a.coords_, b.coords_};
        if (a.tower_->depth() == 0) {
            // embed the rational directly, no adjoining needed
            Coords ac = lift(a.coords_, b.coords_.size());
            return Merged{*b.tower_, std::move(ac), b.coords_};
        }
        Tower T = *a.tower_;
        Coords bc = embed_into(T, *b.tower_, b.coords_);
        Coords ac = lift(a.coords_, std::size_t{1} << T.depth());
        return Merged{std::move(T), std::move(ac), std::move(bc)};
    }

    static std::vector<std::size_t> used_bits(const Tower& T, const Coords& c) {
        std::size_t depth = T.depth();
        std::vector<bool> used(depth, false);
        auto mark = [&](const Coords& v) {
            for (std::size_t mask = 0; mask < v.size(); ++mask) {
                if (v[mask] == 0) continue;
                for (std::size_t i = 0; i < depth; ++i)
                    if (mask >> i & 1) used[i] = true;
            }
        };
        mark(c);
        for (std::size_t i = depth; i-- > 0;) {
            if (used[i]) mark(T.gens[i]);
        }
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < depth; ++i)
            if (used[i]) kept.push_back(i);
        return kept;
    }

    static Coords compress(const Coords& c, const std::vector<std::size_t>& kept,
                           std::size_t old_depth) {
        Coords out(std::size_t{1} << kept.size(), Rat(0));
        for (std::size_t mask = 0; mask < c.size(); ++mask) {
            if (c[mask] == 0) continue;
            std::size_t nm = 0;
            bool valid = true;
            for (std::size_t b = 0; b < old_depth; ++b) {
                if (!(mask >> b & 1)) continue;
                auto it = std::find(kept.begin(), kept.end(), b);
                if (it == kept.end()) {
                    valid = false;
                    break;
                }
                nm |= std::size_t{1} << (it - kept.begin());
            }
            assert(valid);
            if (valid) out[nm] = c[mask];
        }
        return out;
    }

    // true if def (size 2^(i+1)) has any nonzero coord using bit `bit`
    static bool def_uses_bit(const Coords& def, std::size_t bit) {
        for (std::size_t mask = 0; mask < def.size(); ++mask)
            if ((mask >> bit & 1) && def[mask] != 0) return true;
        return false;
    }

    static bool is_rational_def(const Coords& def) {
        for (std::size_t mask = 1; mask < def.size(); ++mask)
            if (def[mask] != 0) return false;
        return true;
    }

    // lexicographic ordering key between adjacent generator defs; both are
    // given over the same prefix basis of size 2^i
    static int compare_defs(const Coords& x, const Coords& y) {
        bool xr = is_rational_def(x), yr = is_rational_def(y);
        if (xr != yr) return xr ? -1 : 1;
        if (xr) return cmp(x[0], y[0]) < 0 ? -1 : (x[0] == y[0] ? 0 : 1);
        for (std::size_t i = 0; i < std::max(x.size(), y.size()); ++i) {
            Rat xi = i < x.size() ? x[i] : Rat(0);
            Rat yi = i < y.size() ? y[i] : Rat(0);
            int c = cmp(xi, yi);
            if (c != 0) return c;
        }
        return 0;
    }

    static Coords swap_bits(const Coords& c, std::size_t i) {
        Coords out(c.size(), Rat(0));
        for (std::size_t mask = 0; mask < c.size(); ++mask) {
            if (c[mask] == 0) continue;
            std::size_t bi = mask >> i & 1, bj = mask >> (i + 1) & 1;
            std::size_t nm = mask & ~((std::size_t{3}) << i);
            nm |= bj << i | bi << (i + 1);
            out[nm] = c[mask];
        }
        return out;
    }

    // Swap generators i and i+1 when legal and ordered the wrong way.
    static bool try_swap(Tower& T, Coords& value, std::size_t i) {
        const Coords& upper = T.gens[i + 1];
        if (def_uses_bit(upper, i)) return false;
        // upper def without bit i, over the same prefix as gens[i]
        Coords upper_compressed(upper.size() / 2);
        for (std::size_t mask = 0; mask < upper.size(); ++mask) {
            if (!(mask >> i & 1)) {
                std::size_t nm = (mask & ((std::size_t{1} << i) - 1)) | ((mask >> (i + 1)) << i);
                upper_compressed[nm] = upper[mask];
            }
        }
        if (compare_defs(upper_compressed, T.gens[i]) >= 0) return false;
        Tower backup = T;
        Coords lower_expanded(T.gens[i].size() * 2, Rat(0));
        for (std::size_t mask = 0; mask < T.gens[i].size(); ++mask) {
            std::size_t nm = (mask & ((std::size_t{1} << i) - 1)) | ((mask >> i) << (i + 1));
            lower_expanded[nm] = T.gens[i][mask];
        }
        bool nonrational = !is_rational_def(upper_compressed) || !is_rational_def(T.gens[i]);
        T.gens[i] = upper_compressed;
        T.gens[i + 1] = lower_expanded;
        for (std::size_t j = i + 2; j < T.depth(); ++j) T.gens[j] = swap_bits(T.gens[j], i);
        if (nonrational) {
            // the moved-down generator must stay a non-square in its new
            // prefix field, else coordinates stop being a basis
            if (ssqrt_raw(T, T.gens[i + 1].data(), i + 1).has_value()) {
                T = std::move(backup);
                return false;
            }
        }
        value = swap_bits(value, i);
        return true;
    }

    static bool all_gens_rational(const Tower& T) {
        for (const Coords& g : T.gens)
            if (!is_rational_def(g)) return false;
        return true;
    }

    // Rewrites the rational generator layer (positions [0, R), after
    // sorting) onto the canonical basis of its square-class group: the
    // sorted RREF basis of the classes spanned by the monomials appearing
    // in the value and in the nested generator definitions. This makes
    // sqrt(2)*sqrt(3) and sqrt(6) coordinate-identical, at any depth.
    static void rational_layer_canonicalize(Tower& T, Coords& c) {
        std::size_t depth = T.depth();
        std::size_t R = 0;
        while (R < depth && is_rational_def(T.gens[R])) ++R;
        if (R == 0) return;
        std::size_t N = depth - R;
        std::vector<Int> gen_ints(R);
        for (std::size_t i = 0; i < R; ++i) gen_ints[i] = T.gens[i][0].get_num();
        const std::size_t rat_mask = (std::size_t{1} << R) - 1;
        // collect the rational-part classes used anywhere
        std::vector<Int> classes;
        auto collect = [&](const Coords& v) {
            for (std::size_t m = 0; m < v.size(); ++m) {
                if (v[m] == 0) continue;
                std::size_t mr = m & rat_mask;
                if (mr == 0) continue;
                Int cls(1);
                for (std::size_t i = 0; i < R; ++i)
                    if (mr >> i & 1) cls = class_mul(cls, gen_ints[i]);
                classes.push_back(cls);
            }
        };
        collect(c);
        for (std::size_t j = R; j < depth; ++j) collect(T.gens[j]);
        if (classes.empty()) return; // rational gens only feed pruning
        // full subgroup closure, so the coprime base does not depend on
        // the presentation the construction path happened to produce
        std::sort(classes.begin(), classes.end());
        classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
        std::vector<Int> subgroup = classes;
        for (std::size_t i = 0; i < subgroup.size(); ++i)
            for (std::size_t j = i + 1; j < subgroup.size(); ++j) {
                Int p = class_mul(subgroup[i], subgroup[j]);
                if (p > 1 && std::find(subgroup.begin(), subgroup.end(), p) == subgroup.end())
                    subgroup.push_back(p);
            }
        std::vector<Int> base = coprime_base(subgroup);
        assert(base.size() <= 63);
        // RREF basis of the used classes over the sorted base
        std::vector<std::uint64_t> rows;
        for (const Int& d : classes) {
            std::uint64_t v = class_vector(d, base);
            for (std::uint64_t r : rows) {
                std::uint64_t lead = r & -r;
                if (v & lead) v ^= r;
            }
            if (v != 0) {
                for (std::uint64_t& r : rows) {
                    std::uint64_t lead = v & -v;
                    if (r & lead) r ^= v;
                }
                rows.push_back(v);
            }
        }
        std::vector<std::pair<Int, std::uint64_t>> new_rats;
        for (std::uint64_t r : rows) {
            Int g(1);
            for (std::size_t i = 0; i < base.size(); ++i)
                if (r >> i & 1) g *= base[i];
            new_rats.emplace_back(g, r);
        }
        std::sort(new_rats.begin(), new_rats.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        const std::size_t R2 = new_rats.size();
        // monomial rewrite: sqrt(prod of old gens) = scale * new monomial;
        // bails out (no mutation) if a square factor cannot be certified,
        // which only happens past the squarefree factoring bound
        auto remap = [&](const Coords& v, std::size_t nested_bits) -> std::optional<Coords> {
            Coords out(std::size_t{1} << (R2 + nested_bits), Rat(0));
            for (std::size_t m = 0; m < v.size(); ++m) {
                if (v[m] == 0) continue;
                std::size_t mr = m & rat_mask;
                std::size_t mn = m >> R;
                std::size_t nm = mn << R2;
                Rat scale(1);
                if (mr != 0) {
                    Int raw(1), cls(1);
                    for (std::size_t i = 0; i < R; ++i)
                        if (mr >> i & 1) {
                            raw *= gen_ints[i];
                            cls = class_mul(cls, gen_ints[i]);
                        }
                    std::uint64_t vec = class_vector(cls, base);
                    Int prod(1);
                    for (std::size_t j = 0; j < R2; ++j) {
                        std::uint64_t lead = new_rats[j].second & -new_rats[j].second;
                        if (vec & lead) {
                            vec ^= new_rats[j].second;
                            nm |= std::size_t{1} << j;
                            prod *= new_rats[j].first;
                        }
                    }
                    if (vec != 0) return std::nullopt;
                    Rat ratio(raw, prod);
                    ratio.canonicalize();
                    auto root = rat_exact_sqrt(ratio);
                    if (!root) return std::nullopt;
                    scale = *root;
                }
                out[nm] += v[m] * scale;
            }
            return out;
        };
        auto nc_opt = remap(c, N);
        if (!nc_opt) return;
        Coords nc = std::move(*nc_opt);
        std::vector<Coords> ndefs;
        for (std::size_t j = 0; j < N; ++j) {
            auto d = remap(T.gens[R + j], j);
            if (!d) return;
            ndefs.push_back(std::move(*d));
        }
        // rescale nested defs to canonical integer form; a generator
        // gamma -> k^2*gamma turns sqrt(gamma) into sqrt(gamma')/k, so
        // every later use of that bit picks up the factor
        for (std::size_t j = 0; j < N; ++j) {
            auto [canon, f] = canon_radicand(ndefs[j]);
            if (canon == ndefs[j]) continue;
            ndefs[j] = std::move(canon);
            std::size_t bit = R2 + j;
            auto apply = [&](Coords& v, std::size_t bitpos) {
                for (std::size_t m = 0; m < v.size(); ++m)
                    if ((m >> bitpos & 1) && v[m] != 0) v[m] *= f;
            };
            apply(nc, bit);
            for (std::size_t k = j + 1; k < N; ++k) apply(ndefs[k], bit);
        }
        std::vector<Coords> ngens;
        for (std::size_t j = 0; j < R2; ++j) {
            Coords def(std::size_t{1} << j, Rat(0));
            def[0] = Rat(new_rats[j].first);
            ngens.push_back(std::move(def));
        }
        for (auto& d : ndefs) ngens.push_back(std::move(d));
        T.gens = std::move(ngens);
        c = std::move(nc);
    }

    static ExactScalar normalize(Tower T, Coords c) {
        for (;;) {
            auto kept = used_bits(T, c);
            if (kept.size() == T.depth()) break;
            Coords nc = compress(c, kept, T.depth());
            std::vector<Coords> ngens;
            for (std::size_t idx = 0; idx < kept.size(); ++idx) {
                std::vector<std::size_t> prefix(kept.begin(), kept.begin() + idx);
                ngens.push_back(compress(T.gens[kept[idx]], prefix, kept[idx]));
            }
            T.gens = std::move(ngens);
            c = std::move(nc);
        }
        auto bubble = [&] {
            bool changed = true;
            while (changed) {
                changed = false;
                for (std::size_t i = 0; i + 1 < T.depth(); ++i)
                    if (try_swap(T, c, i)) changed = true;
            }
        };
        bubble();
        rational_layer_canonicalize(T, c);
        bubble();
        if (T.depth() == 0) return ExactScalar(empty_tower(), std::move(c));
        return ExactScalar(std::make_shared<Tower>(std::move(T)), std::move(c));
    }
};

// ---- public surface ----

ExactScalar::ExactScalar() : tower_(empty_tower()), coords_{Rat(0)} {}

ExactScalar::ExactScalar(long n) : tower_(empty_tower()), coords_{Rat(n)} {}

ExactScalar::ExactScalar(const Rat& q) : tower_(empty_tower()), coords_{q} {
    coords_[0].canonicalize();
}

ExactScalar::ExactScalar(TowerPtr t, std::vector<Rat> coords)
    : tower_(std::move(t)), coords_(std::move(coords)) {}

bool ExactScalar::is_zero() const { return all_zero(coords_.data(), coords_.size()); }

const Rat& ExactScalar::as_rational() const {
    if (!is_rational()) throw Error(ErrorKind::BadArgument, "value is not rational");
    return coords_[0];
}

bool ExactScalar::identical(const ExactScalar& b) const {
    return *tower_ == *b.tower_ && coords_ == b.coords_;
}

ExactScalar ExactScalar::operator-() const {
    Coords c = coords_;
    for (Rat& x : c) x = -x;
    return ExactScalar(tower_, std::move(c));
}

ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    if (a.is_rational() && b.is_rational()) return ExactScalar(Rat(a.coords_[0] + b.coords_[0]));
    Merged m = ExactScalarOps::merge(a, b);
    for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] += m.b[i];
    return ExactScalarOps::normalize(std::move(m.tower), std::move(m.a));
}

ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
    if (a.is_rational() && b.is_rational()) return ExactScalar(Rat(a.coords_[0] - b.coords_[0]));
    Merged m = ExactScalarOps::merge(a, b);
    for (std::size_t i = 0; i < m.a.size(); ++i) m.a[i] -= m.b[i];
    return ExactScalarOps::normalize(std::move(m.tower), std::move(m.a));
}

ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    if (a.is_rational() && b.is_rational()) return ExactScalar(Rat(a.coords_[0] * b.coords_[0]));
    Merged m = ExactScalarOps::merge(a, b);
    Coords r = mul_raw(m.tower, m.a.data(), m.b.data(), m.tower.depth());
    return ExactScalarOps::normalize(std::move(m.tower), std::move(r));
}

ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "exact division by zero");
    if (a.is_rational() && b.is_rational()) return ExactScalar(Rat(a.coords_[0] / b.coords_[0]));
    Merged m = ExactScalarOps::merge(a, b);
    Coords ib = inv_raw(m.tower, m.b.data(), m.tower.depth());
    Coords r = mul_raw(m.tower, m.a.data(), ib.data(), m.tower.depth());
    return ExactScalarOps::normalize(std::move(m.tower), std::move(r));
}

int ExactScalar::sign() const {
    return raw_sign(*tower_, coords_.data(), tower_->depth());
}

ExactScalar ExactScalar::sqrt() const {
    int s = sign();
    if (s < 0) throw Error(ErrorKind::NegativeRadicand, "sqrt of a negative value");
    if (s == 0) return ExactScalar();
    Tower T = *tower_;
    Coords r = bsqrt(T, coords_);
    return ExactScalarOps::normalize(std::move(T), std::move(r));
}

Interval ExactScalar::to_interval(unsigned precision) const {
    if (is_zero()) return Interval(0.0, 0.0);
    if (is_rational()) return Interval::from_rat(coords_[0]);
    Rat target = Rat(1, Int(1) << std::min(precision + 1, 1022u));
    for (unsigned prec = std::max(precision + 8, 64u);; prec *= 2) {
        RatInterval e = enclose_raw(*tower_, coords_.data(), tower_->depth(), prec);
        if (e.width() <= target) {
            Interval lo = Interval::from_rat(e.lo);
            Interval hi = Interval::from_rat(e.hi);
            return Interval(lo.lo, hi.hi);
        }
        if (prec > (1u << 20))
            throw Error(ErrorKind::PrecisionCapExceeded, "to_interval refinement stalled");
    }
}

double ExactScalar::to_double() const {
    if (is_rational()) return rat_to_double(coords_[0]);
    return to_interval(52).mid();
}

std::string ExactScalar::to_string() const {
    if (is_rational()) return rat_to_string(coords_[0]);
    if (tower_->depth() == 1 && ExactScalarOps::is_rational_def(tower_->gens[0])) {
        const Rat& m = tower_->gens[0][0];
        const Rat& a = coords_[0];
        const Rat& b = coords_[1];
        std::string radical = "sqrt(" + rat_to_string(m) + ")";
        auto coeff = [&](const Rat& v) {
            if (v == 1) return radical;
            if (v == -1) return "-" + radical;
            if (v.get_den() == 1) return rat_to_string(v) + "*" + radical;
            return "(" + rat_to_string(v) + ")*" + radical;
        };
        if (a == 0) return coeff(b);
        std::string out = rat_to_string(a);
        if (b > 0)
            out += " + " + coeff(b);
        else
            out += " - " + coeff(Rat(-b));
        return out;
    }
    std::ostringstream os;
    os.precision(15);
    os << "~" << to_double();
    return os.str();
}

int compare(const ExactScalar& a, const ExactScalar& b) { return (a - b).sign(); }

} // namespace geolab
