#pragma once

#include "epw/rational.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace epw {

using VarNames = std::shared_ptr<const std::vector<std::string>>;

inline VarNames make_vars(std::vector<std::string> names)
{
    if (names.size() > 8)
        throw std::invalid_argument("at most 8 variables are supported");
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j])
                throw std::invalid_argument("duplicate variable name '" + names[i] + "'");
    return std::make_shared<const std::vector<std::string>>(std::move(names));
}

/** Exponent vectors packed one byte per variable, first variable in the top byte. */
namespace mono {

inline unsigned exponent(std::uint64_t m, unsigned i)
{
    return static_cast<unsigned>((m >> (8 * (7 - i))) & 0xffu);
}

inline std::uint64_t with_exponent(std::uint64_t m, unsigned i, unsigned e)
{
    unsigned shift = 8 * (7 - i);
    return (m & ~(std::uint64_t(0xff) << shift)) | (std::uint64_t(e) << shift);
}

inline unsigned degree(std::uint64_t m)
{
    unsigned d = 0;
    for (; m; m >>= 8)
        d += static_cast<unsigned>(m & 0xffu);
    return d;
}

inline std::uint64_t pack(const std::vector<unsigned>& e)
{
    std::uint64_t m = 0;
    unsigned total = 0;
    for (unsigned i = 0; i < e.size(); ++i) {
        total += e[i];
        if (e[i] > 255 || total > 255)
            throw std::overflow_error("monomial degree exceeds 255");
        m = with_exponent(m, i, e[i]);
    }
    return m;
}

inline std::vector<unsigned> unpack(std::uint64_t m, unsigned n)
{
    std::vector<unsigned> e(n);
    for (unsigned i = 0; i < n; ++i)
        e[i] = exponent(m, i);
    return e;
}

inline bool divides(std::uint64_t a, std::uint64_t b)
{
    for (unsigned i = 0; i < 8; ++i)
        if (exponent(a, i) > exponent(b, i))
            return false;
    return true;
}

/** Graded-lex: higher total degree first, ties by lex with the first variable largest. */
inline bool grlex_greater(std::uint64_t a, std::uint64_t b)
{
    unsigned da = degree(a), db = degree(b);
    return da != db ? da > db : a > b;
}

} // namespace mono

struct Term {
    std::uint64_t mono;
    Rational coeff;
};

/** Multivariate polynomial over Q with terms kept in descending graded-lex order. */
class MultiPoly {
public:
    MultiPoly() : vars_(make_vars({})) {}
    explicit MultiPoly(VarNames vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(VarNames vars, const Rational& c)
    {
        MultiPoly p(std::move(vars));
        if (c != 0)
            p.terms_.push_back({0, c});
        return p;
    }
    static MultiPoly variable(VarNames vars, unsigned i)
    {
        if (i >= vars->size())
            throw std::out_of_range("variable index out of range");
        MultiPoly p(std::move(vars));
        p.terms_.push_back({mono::with_exponent(0, i, 1), Rational(1)});
        return p;
    }
    static MultiPoly monomial(VarNames vars, const std::vector<unsigned>& exps, const Rational& c)
    {
        if (exps.size() != vars->size())
            throw std::invalid_argument("exponent vector length mismatch");
        MultiPoly p(std::move(vars));
        if (c != 0)
            p.terms_.push_back({mono::pack(exps), c});
        return p;
    }
    /** Build from arbitrary (mono, coeff) pairs; duplicates are summed. */
    static MultiPoly from_terms(VarNames vars, std::vector<Term> terms)
    {
        MultiPoly p(std::move(vars));
        p.terms_ = std::move(terms);
        p.normalize();
        return p;
    }

    const VarNames& vars() const { return vars_; }
    unsigned nvars() const { return static_cast<unsigned>(vars_->size()); }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono == 0); }
    std::size_t size() const { return terms_.size(); }

    /** Total degree; -1 for the zero polynomial. */
    int degree() const { return terms_.empty() ? -1 : static_cast<int>(mono::degree(terms_[0].mono)); }
    /** Lowest total degree of a nonzero term; -1 for zero. */
    int low_degree() const
    {
        if (terms_.empty())
            return -1;
        return static_cast<int>(mono::degree(terms_.back().mono));
    }
    unsigned degree_in(unsigned v) const
    {
        unsigned d = 0;
        for (const auto& t : terms_)
            d = std::max(d, mono::exponent(t.mono, v));
        return d;
    }
    bool is_homogeneous() const { return terms_.empty() || degree() == low_degree(); }

    Rational constant_term() const
    {
        if (!terms_.empty() && terms_.back().mono == 0)
            return terms_.back().coeff;
        return 0;
    }
    Rational coeff(const std::vector<unsigned>& exps) const
    {
        std::uint64_t m = mono::pack(exps);
        for (const auto& t : terms_)
            if (t.mono == m)
                return t.coeff;
        return 0;
    }
    const Term& leading() const { return terms_.front(); }

    MultiPoly homogeneous_part(unsigned d) const
    {
        MultiPoly p(vars_);
        for (const auto& t : terms_)
            if (mono::degree(t.mono) == d)
                p.terms_.push_back(t);
        return p;
    }

    Rational eval(const std::vector<Rational>& x) const
    {
        if (x.size() != nvars())
            throw std::invalid_argument("evaluation point dimension mismatch");
        std::vector<std::vector<Rational>> pw(nvars());
        for (unsigned i = 0; i < nvars(); ++i) {
            unsigned d = degree_in(i);
            pw[i].resize(d + 1);
            pw[i][0] = 1;
            for (unsigned e = 1; e <= d; ++e)
                pw[i][e] = pw[i][e - 1] * x[i];
        }
        Rational s = 0, term;
        for (const auto& t : terms_) {
            term = t.coeff;
            for (unsigned i = 0; i < nvars(); ++i) {
                unsigned e = mono::exponent(t.mono, i);
                if (e)
                    term *= pw[i][e];
            }
            s += term;
        }
        return s;
    }

    MultiPoly derivative(unsigned v) const
    {
        MultiPoly p(vars_);
        for (const auto& t : terms_) {
            unsigned e = mono::exponent(t.mono, v);
            if (e == 0)
                continue;
            p.terms_.push_back({mono::with_exponent(t.mono, v, e - 1), t.coeff * e});
        }
        p.normalize();
        return p;
    }

    /** Substitute images[i] for variable i; images share a common ring. */
    MultiPoly compose(const std::vector<MultiPoly>& images) const
    {
        if (images.size() != nvars())
            throw std::invalid_argument("compose: wrong number of images");
        VarNames target = images.empty() ? vars_ : images[0].vars_;
        std::vector<std::vector<MultiPoly>> pw(nvars());
        for (unsigned i = 0; i < nvars(); ++i) {
            unsigned d = degree_in(i);
            pw[i].push_back(constant(target, 1));
            for (unsigned e = 1; e <= d; ++e)
                pw[i].push_back(pw[i].back() * images[i]);
        }
        MultiPoly sum(target);
        for (const auto& t : terms_) {
            MultiPoly m = constant(target, t.coeff);
            for (unsigned i = 0; i < nvars(); ++i) {
                unsigned e = mono::exponent(t.mono, i);
                if (e)
                    m = m * pw[i][e];
            }
            sum += m;
        }
        return sum;
    }

    /** Same polynomial viewed in a ring whose variable list contains ours by name. */
    MultiPoly embed(const VarNames& target) const
    {
        std::vector<unsigned> pos(nvars());
        for (unsigned i = 0; i < nvars(); ++i) {
            auto it = std::find(target->begin(), target->end(), (*vars_)[i]);
            if (it == target->end())
                throw std::invalid_argument("embed: variable '" + (*vars_)[i] + "' missing");
            pos[i] = static_cast<unsigned>(it - target->begin());
        }
        MultiPoly p(target);
        for (const auto& t : terms_) {
            std::uint64_t m = 0;
            for (unsigned i = 0; i < nvars(); ++i)
                m = mono::with_exponent(m, pos[i], mono::exponent(t.mono, i));
            p.terms_.push_back({m, t.coeff});
        }
        p.normalize();
        return p;
    }

    /** Scale so the leading coefficient is 1 (zero stays zero). */
    MultiPoly monic() const
    {
        if (terms_.empty())
            return *this;
        Rational inv = 1 / terms_[0].coeff;
        MultiPoly p = *this;
        for (auto& t : p.terms_)
            t.coeff *= inv;
        return p;
    }

    MultiPoly& operator+=(const MultiPoly& o) { return *this = merge(*this, o, false); }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = merge(*this, o, true); }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, false); }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return merge(a, b, true); }
    friend MultiPoly operator-(const MultiPoly& a)
    {
        MultiPoly p = a;
        for (auto& t : p.terms_)
            t.coeff = -t.coeff;
        return p;
    }
    friend MultiPoly operator*(const Rational& s, const MultiPoly& a)
    {
        MultiPoly p(a.vars_);
        if (s == 0)
            return p;
        p.terms_ = a.terms_;
        for (auto& t : p.terms_)
            t.coeff *= s;
        return p;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
    {
        VarNames v = common_ring(a, b);
        if (a.terms_.empty() || b.terms_.empty())
            return MultiPoly(v);
        if (a.degree() + b.degree() > 255)
            throw std::overflow_error("product degree exceeds 255");
        if (a.is_constant())
            return a.terms_[0].coeff * b.with_vars(v);
        if (b.is_constant())
            return b.terms_[0].coeff * a.with_vars(v);
        // accumulate over integer numerators; one rational division per output term
        auto scaled = [](const std::vector<Term>& ts, Integer& den) {
            den = 1;
            for (const auto& t : ts)
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
            std::vector<Integer> out;
            out.reserve(ts.size());
            for (const auto& t : ts)
                out.push_back(t.coeff.get_num() * (den / t.coeff.get_den()));
            return out;
        };
        Integer da, db;
        std::vector<Integer> na = scaled(a.terms_, da), nb = scaled(b.terms_, db);
        std::unordered_map<std::uint64_t, Integer> acc;
        acc.reserve(std::min<std::size_t>(a.terms_.size() * b.terms_.size(), std::size_t(1) << 18));
        for (std::size_t i = 0; i < na.size(); ++i)
            for (std::size_t j = 0; j < nb.size(); ++j) {
                Integer& slot = acc[a.terms_[i].mono + b.terms_[j].mono];
                mpz_addmul(slot.get_mpz_t(), na[i].get_mpz_t(), nb[j].get_mpz_t());
            }
        Integer den = da * db;
        MultiPoly p(v);
        p.terms_.reserve(acc.size());
        for (auto& kv : acc)
            if (kv.second != 0) {
                Rational c(kv.second, den);
                c.canonicalize();
                p.terms_.push_back({kv.first, std::move(c)});
            }
        p.sort_terms();
        return p;
    }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b)
    {
        if (a.terms_.size() != b.terms_.size())
            return false;
        if (!a.terms_.empty() && !same_ring(a, b))
            return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i)
            if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff)
                return false;
        return true;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly pow(unsigned e) const
    {
        MultiPoly r = constant(vars_, 1), base = *this;
        while (e) {
            if (e & 1u)
                r = r * base;
            e >>= 1;
            if (e)
                base = base * base;
        }
        return r;
    }

    static bool same_ring(const MultiPoly& a, const MultiPoly& b)
    {
        return a.vars_ == b.vars_ || *a.vars_ == *b.vars_;
    }

private:
    MultiPoly with_vars(VarNames v) const
    {
        MultiPoly p = *this;
        p.vars_ = std::move(v);
        return p;
    }

    /** Constants in the empty ring adapt to the other operand's ring. */
    static VarNames common_ring(const MultiPoly& a, const MultiPoly& b)
    {
        if (same_ring(a, b))
            return a.vars_;
        if (a.vars_->empty() && a.is_constant())
            return b.vars_;
        if (b.vars_->empty() && b.is_constant())
            return a.vars_;
        throw std::invalid_argument("polynomials live in different rings");
    }

    static MultiPoly merge(const MultiPoly& a, const MultiPoly& b, bool subtract)
    {
        VarNames v = common_ring(a, b);
        MultiPoly p(v);
        p.terms_.reserve(a.terms_.size() + b.terms_.size());
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j == b.terms_.size() ||
                (i < a.terms_.size() && mono::grlex_greater(a.terms_[i].mono, b.terms_[j].mono))) {
                p.terms_.push_back(a.terms_[i++]);
            } else if (i == a.terms_.size() || mono::grlex_greater(b.terms_[j].mono, a.terms_[i].mono)) {
                p.terms_.push_back({b.terms_[j].mono, subtract ? Rational(-b.terms_[j].coeff) : b.terms_[j].coeff});
                ++j;
            } else {
                Rational c = subtract ? Rational(a.terms_[i].coeff - b.terms_[j].coeff)
                                      : Rational(a.terms_[i].coeff + b.terms_[j].coeff);
                if (c != 0)
                    p.terms_.push_back({a.terms_[i].mono, c});
                ++i;
                ++j;
            }
        }
        return p;
    }

    void sort_terms()
    {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& x, const Term& y) { return mono::grlex_greater(x.mono, y.mono); });
    }

    void normalize()
    {
        for (const auto& t : terms_)
            for (unsigned i = nvars(); i < 8; ++i)
                if (mono::exponent(t.mono, i) != 0)
                    throw std::invalid_argument("exponent on a nonexistent variable");
        sort_terms();
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().mono == t.mono)
                out.back().coeff += t.coeff;
            else
                out.push_back(std::move(t));
            if (out.back().coeff == 0)
                out.pop_back();
        }
        terms_ = std::move(out);
    }

    VarNames vars_;
    std::vector<Term> terms_;
};

inline MultiPoly operator*(const MultiPoly& a, const Rational& s) { return s * a; }

/** Canonical text form, e.g. "3/2*x^2*y - x + 1". */
inline std::string to_text(const MultiPoly& f)
{
    if (f.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : f.terms()) {
        Rational c = t.coeff;
        bool neg = c < 0;
        if (neg)
            c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool wrote = false;
        if (t.mono == 0 || c != 1) {
            os << c.get_str();
            wrote = true;
        }
        for (unsigned i = 0; i < f.nvars(); ++i) {
            unsigned e = mono::exponent(t.mono, i);
            if (!e)
                continue;
            if (wrote)
                os << "*";
            os << (*f.vars())[i];
            if (e > 1)
                os << "^" << e;
            wrote = true;
        }
    }
    return os.str();
}

namespace detail {

class PolyParser {
public:
    PolyParser(const std::string& s, VarNames vars) : s_(s), vars_(std::move(vars)) {}

    MultiPoly parse()
    {
        MultiPoly p = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
    }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string digits()
    {
        std::size_t b = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        return s_.substr(b, pos_ - b);
    }
    MultiPoly expr()
    {
        MultiPoly acc(vars_);
        bool neg = false;
        if (eat('-'))
            neg = true;
        else
            eat('+');
        MultiPoly t = term();
        acc = neg ? -t : t;
        for (;;) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                return acc;
        }
    }
    MultiPoly term()
    {
        MultiPoly acc = factor();
        while (eat('*'))
            acc = acc * factor();
        return acc;
    }
    MultiPoly factor()
    {
        MultiPoly base = primary();
        if (eat('^')) {
            skip();
            std::string d = digits();
            if (d.empty())
                fail("expected exponent");
            base = base.pow(static_cast<unsigned>(std::stoul(d)));
        }
        return base;
    }
    MultiPoly primary()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly inner = expr();
            if (!eat(')'))
                fail("expected ')'");
            return inner;
        }
        if (c == '-') {
            ++pos_;
            return -primary();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            if (pos_ + 1 < s_.size() && s_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
                ++pos_;
                num += "/" + digits();
            }
            return MultiPoly::constant(vars_, parse_rational(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t b = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name = s_.substr(b, pos_ - b);
            auto it = std::find(vars_->begin(), vars_->end(), name);
            if (it == vars_->end())
                fail("unknown variable '" + name + "'");
            return MultiPoly::variable(vars_, static_cast<unsigned>(it - vars_->begin()));
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& s_;
    VarNames vars_;
    std::size_t pos_ = 0;
};

} // namespace detail

/** Parse infix text over the given variables; accepts + - * ^, parentheses and p/q literals. */
inline MultiPoly parse_poly(const std::string& text, VarNames vars)
{
    return detail::PolyParser(text, std::move(vars)).parse();
}

/** Quotient f / g when g divides f exactly. */
inline std::optional<MultiPoly> divide_exact(const MultiPoly& f, const MultiPoly& g)
{
    if (g.is_zero())
        throw std::domain_error("division by the zero polynomial");
    if (g.is_constant())
        return (1 / g.leading().coeff) * f;
    auto greater = [](std::uint64_t a, std::uint64_t b) { return mono::grlex_greater(a, b); };
    std::map<std::uint64_t, Rational, decltype(greater)> rem(greater);
    for (const auto& t : f.terms())
        rem.emplace(t.mono, t.coeff);
    const Term& lg = g.leading();
    Rational inv = 1 / lg.coeff;
    std::vector<Term> quot;
    Rational prod;
    while (!rem.empty()) {
        auto top = rem.begin();
        if (!mono::divides(lg.mono, top->first))
            return std::nullopt;
        Term qt{top->first - lg.mono, top->second * inv};
        rem.erase(top);
        for (std::size_t i = 1; i < g.terms().size(); ++i) {
            const Term& gt = g.terms()[i];
            prod = qt.coeff * gt.coeff;
            auto [it, fresh] = rem.try_emplace(qt.mono + gt.mono, 0);
            it->second -= prod;
            if (it->second == 0)
                rem.erase(it);
        }
        quot.push_back(std::move(qt));
    }
    return MultiPoly::from_terms(g.vars(), std::move(quot));
}

namespace detail {

inline int top_variable(const MultiPoly& f)
{
    int v = -1;
    for (const auto& t : f.terms())
        for (unsigned i = 0; i < f.nvars(); ++i)
            if (mono::exponent(t.mono, i))
                v = std::max(v, static_cast<int>(i));
    return v;
}

/** Coefficients of f as a polynomial in variable v. */
inline std::vector<MultiPoly> coeffs_in(const MultiPoly& f, unsigned v)
{
    std::vector<std::vector<Term>> buckets(f.degree_in(v) + 1);
    for (const auto& t : f.terms())
        buckets[mono::exponent(t.mono, v)].push_back({mono::with_exponent(t.mono, v, 0), t.coeff});
    std::vector<MultiPoly> out;
    for (auto& b : buckets)
        out.push_back(MultiPoly::from_terms(f.vars(), std::move(b)));
    return out;
}

inline MultiPoly var_power(const VarNames& vars, unsigned v, unsigned e)
{
    std::vector<unsigned> ex(vars->size(), 0);
    ex[v] = e;
    return MultiPoly::monomial(vars, ex, 1);
}

inline MultiPoly pseudo_remainder(MultiPoly a, const MultiPoly& b, unsigned v)
{
    unsigned db = b.degree_in(v);
    MultiPoly lb = coeffs_in(b, v).back();
    while (!a.is_zero() && a.degree_in(v) >= db) {
        unsigned da = a.degree_in(v);
        MultiPoly la = coeffs_in(a, v).back();
        a = lb * a - la * var_power(a.vars(), v, da - db) * b;
    }
    return a;
}

} // namespace detail

inline MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

namespace detail {

inline MultiPoly content_in(const MultiPoly& f, unsigned v)
{
    MultiPoly g(f.vars());
    for (const auto& c : coeffs_in(f, v)) {
        if (c.is_zero())
            continue;
        g = g.is_zero() ? c.monic() : poly_gcd(g, c);
        if (g.is_constant())
            break;
    }
    return g;
}

} // namespace detail

/** Monic greatest common divisor over Q, by recursive primitive remainder sequences. */
inline MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b)
{
    if (a.is_zero())
        return b.monic();
    if (b.is_zero())
        return a.monic();
    int v = std::max(detail::top_variable(a), detail::top_variable(b));
    if (v < 0)
        return MultiPoly::constant(a.vars(), 1);
    unsigned uv = static_cast<unsigned>(v);
    MultiPoly ca = detail::content_in(a, uv), cb = detail::content_in(b, uv);
    MultiPoly c = poly_gcd(ca, cb);
    MultiPoly pa = *divide_exact(a, ca), pb = *divide_exact(b, cb);
    if (pa.degree_in(uv) < pb.degree_in(uv))
        std::swap(pa, pb);
    MultiPoly g(a.vars());
    for (;;) {
        if (pb.is_zero()) {
            g = pa;
            break;
        }
        if (pb.degree_in(uv) == 0) {
            g = MultiPoly::constant(a.vars(), 1);
            break;
        }
        MultiPoly r = detail::pseudo_remainder(pa, pb, uv);
        pa = pb;
        pb = r.is_zero() ? r : *divide_exact(r, detail::content_in(r, uv));
    }
    g = *divide_exact(g, detail::content_in(g, uv));
    return (c * g).monic();
}

/** Product of the distinct irreducible factors of f, made monic. */
inline MultiPoly squarefree_part(const MultiPoly& f)
{
    if (f.is_zero())
        throw std::domain_error("squarefree part of the zero polynomial");
    MultiPoly g = f;
    for (unsigned i = 0; i < f.nvars(); ++i) {
        MultiPoly d = f.derivative(i);
        if (!d.is_zero())
            g = poly_gcd(g, d);
    }
    return divide_exact(f, g.monic())->monic();
}

} // namespace epw
