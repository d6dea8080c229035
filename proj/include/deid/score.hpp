#pragma once

namespace deid {

/// Precision, recall and their harmonic mean, each in [0, 1].
struct ScoreTriple {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;

    /// F1 as the harmonic mean; 0 when P + R = 0.
    static ScoreTriple from_pr(double p, double r) {
        const double f = (p + r) > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
        return ScoreTriple{p, r, f};
    }

    bool operator==(const ScoreTriple&) const = default;
};

} // namespace deid
