#include "boxplus/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <sstream>

#include <mpfr.h>

namespace boxplus {

Rat make_rat(long num, long den) {
    if (den == 0) throw Error("make_rat: zero denominator");
    Rat out(num, den);
    out.canonicalize();
    return out;
}

Rat parse_rat(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational literal");
    // mpq_set_str accepts some forms we do not want (whitespace, bases);
    // validate the shape first: [-]digits[/digits]
    auto check_digits = [&](size_t begin, size_t end) {
        if (begin >= end) return false;
        for (size_t i = begin; i < end; ++i)
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
        return true;
    };
    size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    size_t slash = text.find('/');
    bool ok;
    if (slash == std::string::npos) {
        ok = check_digits(start, text.size());
    } else {
        ok = check_digits(start, slash) && check_digits(slash + 1, text.size());
    }
    if (!ok) throw ParseError("bad rational literal: '" + text + "'");

    mpq_class q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
        throw ParseError("bad rational literal: '" + text + "'");
    if (sgn(mpq_class(q.get_den())) == 0)
        throw ParseError("zero denominator: '" + text + "'");
    q.canonicalize();
    return q;
}

std::string format_rat(const Rat& value) {
    return value.get_str();
}

double to_double(const Rat& value) {
    return value.get_d();
}

Rat rat_abs(const Rat& value) {
    return value < 0 ? Rat(-value) : value;
}

Rat rat_pow(const Rat& base, unsigned long exponent) {
    Rat out;
    mpz_pow_ui(mpq_numref(out.get_mpq_t()), mpq_numref(base.get_mpq_t()), exponent);
    mpz_pow_ui(mpq_denref(out.get_mpq_t()), mpq_denref(base.get_mpq_t()), exponent);
    // base is canonical, so num^k / den^k is already coprime
    return out;
}

Rat linf_norm(const Vec& x) {
    Rat best(0);
    for (const Rat& v : x) {
        Rat a = rat_abs(v);
        if (a > best) best = a;
    }
    return best;
}

bool copositive(const Vec& u, const Vec& v) {
    if (u.size() != v.size()) throw DimensionMismatch("copositive: dimension mismatch");
    for (size_t i = 0; i < u.size(); ++i)
        if (sgn(u[i]) * sgn(v[i]) < 0) return false;
    return true;
}

Vec scaled(const Rat& factor, const Vec& x) {
    Vec out;
    out.reserve(x.size());
    for (const Rat& v : x) out.emplace_back(factor * v);
    return out;
}

Vec negated(const Vec& x) {
    return scaled(Rat(-1), x);
}

std::string format_vec(const Vec& x) {
    std::string out = "(";
    for (size_t i = 0; i < x.size(); ++i) {
        if (i) out += ", ";
        out += format_rat(x[i]);
    }
    out += ")";
    return out;
}

Rat round_to_rational(double value, long max_denominator) {
    if (max_denominator < 1) throw Error("round_to_rational: bad denominator cap");
    if (!std::isfinite(value)) throw Error("round_to_rational: non-finite input");
    bool neg = value < 0;
    double x = neg ? -value : value;

    // Stern-Brocot walk; keeps the best convergent under the cap.
    long pa = 0, qa = 1, pb = 1, qb = 0;  // 0/1 and 1/0
    double rem = x;
    for (int iter = 0; iter < 64; ++iter) {
        double fl = std::floor(rem);
        if (fl > 1e18) break;
        long a = static_cast<long>(fl);
        long pn = a * pb + pa, qn = a * qb + qa;
        if (qn > max_denominator) {
            // largest semiconvergent still under the cap
            long k = (qb == 0) ? 0 : (max_denominator - qa) / qb;
            long ps = k * pb + pa, qs = k * qb + qa;
            // choose between ps/qs and pb/qb by distance
            double cand1 = qs > 0 ? static_cast<double>(ps) / qs : 1e300;
            double cand2 = qb > 0 ? static_cast<double>(pb) / qb : 1e300;
            double best = (std::fabs(cand1 - x) < std::fabs(cand2 - x)) ? cand1 : cand2;
            long bp = (best == cand1) ? ps : pb;
            long bq = (best == cand1) ? qs : qb;
            Rat out(bp, bq == 0 ? 1 : bq);
            out.canonicalize();
            return neg ? Rat(-out) : out;
        }
        pa = pb; qa = qb; pb = pn; qb = qn;
        double frac = rem - fl;
        if (frac < 1e-15) break;
        rem = 1.0 / frac;
    }
    Rat out(pb, qb == 0 ? 1 : qb);
    out.canonicalize();
    return neg ? Rat(-out) : out;
}

double rootn_signed(const Rat& power_value, unsigned long q, unsigned precision_bits) {
    if (q % 2 == 0) throw Error("rootn_signed: even root order");
    int s = sgn(power_value);
    if (s == 0) return 0.0;
    mpfr_t t;
    mpfr_init2(t, precision_bits);
    mpfr_set_q(t, rat_abs(power_value).get_mpq_t(), MPFR_RNDN);
    mpfr_rootn_ui(t, t, q, MPFR_RNDN);
    double out = mpfr_get_d(t, MPFR_RNDN);
    mpfr_clear(t);
    return s < 0 ? -out : out;
}

}  // namespace boxplus
