#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bmd/error.hpp"

namespace bmd {

// Built-in families of positive, ultimately strictly increasing, unbounded
// sequences lambda_1 < lambda_2 < ...  All accepted specs are strictly
// increasing from index 1 (validated at construction).
struct Arithmetic {
    double step = 1.0;    // c > 0
    double offset = 0.0;  // a >= 0
};

struct FirstDigit {
    int digit = 1;   // p in 1..base-1
    int base = 10;   // >= 2
};

struct Power {
    int exponent = 2;  // p >= 2
};

struct LogPower {
    int exponent = 2;  // lambda_n = log(n+1) * n^p
};

enum class PsiKind { sine, alternating, table };

struct PerturbedLinear {
    double slope = 2.0;  // ell > 0
    PsiKind psi = PsiKind::sine;
    std::vector<double> table;  // cyclic psi values for PsiKind::table
};

struct ExplicitFile {
    std::string path;
    std::vector<double> values;
};

using Family = std::variant<Arithmetic, FirstDigit, Power, LogPower, PerturbedLinear, ExplicitFile>;

class SequenceSpec {
public:
    // Factories validate parameter domains and monotonicity.
    static SequenceSpec arithmetic(double step, double offset = 0.0);
    static SequenceSpec first_digit(int digit, int base = 10);
    static SequenceSpec power(int exponent);
    static SequenceSpec log_power(int exponent);
    static SequenceSpec perturbed(double slope, PsiKind psi, std::vector<double> table = {});
    static SequenceSpec from_file(const std::string& path);
    static SequenceSpec from_values(std::vector<double> values, std::string label = "<values>");

    // Spec grammar: family:key=value[,key=value]*  with families
    // ap | firstdigit | power | logpower | perturbed | file.
    static SequenceSpec parse(const std::string& text);
    std::string render() const;  // canonical form; parse(render(s)) == s

    /// lambda_n (1-based). Exact for integer-valued families within the
    /// 64-bit-safe horizon; overflow is signalled, never silently lossy.
    double term(std::int64_t n) const;

    /// Counting function F(t) = #{k : lambda_k <= t}, F(0) = 0.
    std::int64_t counting(double t) const;

    /// #{k : lambda_k in (a, b]} = F(b) - F(a); requires 0 <= a < b.
    std::int64_t count_in_interval(double a, double b) const;

    /// Piecewise-linear interpolant through (n, lambda_n), for x >= 1.
    double interpolant(double x) const;

    /// Inverse of the interpolant, for y >= lambda_1. Bracket located by
    /// direct search on term(), independent of the closed-form counting.
    double interpolant_inverse(double y) const;

    const Family& family() const { return family_; }
    bool is_file() const { return std::holds_alternative<ExplicitFile>(family_); }

    // True when every term is an integer (exactly for the integer families,
    // sample-checked for perturbed ones).
    bool integer_valued() const { return integer_valued_; }

    // Index from which strict increase is guaranteed (1 for all accepted specs).
    std::int64_t monotone_from() const { return 1; }

    // Largest evaluable index: file length, or the 64-bit-safe horizon cap for
    // integer families; nullopt when unbounded.
    std::optional<std::int64_t> max_index() const;

    // Largest t with exact counting (file prefixes: last term; integer
    // families: the 64-bit-safe horizon); nullopt when unrestricted.
    std::optional<double> max_query() const;

private:
    explicit SequenceSpec(Family family);
    void validate();

    Family family_;
    bool integer_valued_ = false;
};

}  // namespace bmd
