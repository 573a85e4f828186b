#include <rejsched/alpha/alpha.hpp>
#include <rejsched/core/error.hpp>

namespace rejsched {

int floor_log(const Rational& x) {
    if (x.sign() <= 0) {
        throw Error(ErrorCode::NonPositiveArgument, "floor_log(" + x.str() + ")");
    }
    const mpz_class& num = x.numerator();
    const mpz_class& den = x.denominator();
    const long bits_num = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
    const long bits_den = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
    // x lies in (2^(i-1), 2^(i+1)) for i = bits_num - bits_den.
    long i = bits_num - bits_den;
    mpz_class lhs = num;
    mpz_class rhs = den;
    if (i >= 0) {
        rhs <<= static_cast<mp_bitcnt_t>(i);
    } else {
        lhs <<= static_cast<mp_bitcnt_t>(-i);
    }
    if (lhs < rhs) {
        --i;
    }
    return static_cast<int>(i);
}

int density_class(const Job& job, MachineIndex machine) {
    return floor_log(job.density(machine));
}

AlphaBreakdown compute_alpha(const Job& job, MachineIndex machine, std::span<const ResidualJob> active,
                             const Rational& epsilon) {
    const Rational size(job.size_on(machine));
    const Rational density = job.weight / size;

    AlphaBreakdown out;
    out.density_class = floor_log(density);
    out.self_term = job.weight * size / Rational(2);

    for (const ResidualJob& other : active) {
        if (other.id() == job.id) {
            throw Error(ErrorCode::JobInActiveSet, "job " + std::to_string(job.id));
        }
        const Rational& other_density = other.density;
        // Denser (or equal) jobs delay the arrival; lighter ones are delayed by it.
        const Rational term = other_density >= density ? job.weight * other.remaining
                                                       : size * other.residual_weight();
        if (floor_log(other_density) >= out.density_class) {
            out.alpha_plus += term;
        } else {
            out.alpha_minus += term;
        }
    }

    out.alpha = out.alpha_plus + out.self_term + out.alpha_minus;
    const Rational threshold = job.weight * size / epsilon;
    out.in_j_plus = out.alpha_plus >= threshold;
    out.in_j_minus = out.alpha_minus > threshold;
    return out;
}

}  // namespace rejsched
