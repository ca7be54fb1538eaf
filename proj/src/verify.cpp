#include "latentgeom/verify.hpp"

#include <cmath>
#include <sstream>

#include "latentgeom/samplers.hpp"

namespace latentgeom::verify {

namespace {

using parallel::KahanSum;

std::string prior_label(const char* what, const LatentPrior& prior) {
    std::ostringstream os;
    os << what << "[" << prior.family_name() << " d=" << prior.d
       << " scale=" << prior.scale_param << "]";
    return os.str();
}

struct Moments {
    double mean;
    double var;
    double se_mean;
    double se_var;
};

// Two-pass moments with compensated summation in a fixed order. The
// standard error of the variance uses the delta method via the fourth
// central moment.
Moments compute_moments(std::span<const double> xs) {
    const double n = double(xs.size());
    KahanSum s;
    for (double x : xs) s.add(x);
    const double mean = s.value() / n;
    KahanSum s2, s4;
    for (double x : xs) {
        const double d = x - mean;
        s2.add(d * d);
        s4.add(d * d * d * d);
    }
    const double var = s2.value() / (n - 1.0);
    const double m2 = s2.value() / n;
    const double m4 = s4.value() / n;
    return {mean, var, std::sqrt(var / n), std::sqrt(std::max(0.0, m4 - m2 * m2) / n)};
}

Verdict four_se_verdict(double estimate, double claimed, double se) {
    return std::fabs(estimate - claimed) <= 4.0 * se ? Verdict::Consistent : Verdict::Inconsistent;
}

} // namespace

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Consistent: return "Consistent";
        case Verdict::Inconsistent: return "Inconsistent";
        default: return "Informational";
    }
}

double two_sample_ks(std::span<const double> sorted_a, std::span<const double> sorted_b) {
    if (sorted_a.empty() || sorted_b.empty()) throw EmptyInput("two_sample_ks: empty sample");
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < sorted_a.size() && j < sorted_b.size()) {
        // step past ties in both samples before comparing the CDFs
        const double x = std::min(sorted_a[i], sorted_b[j]);
        while (i < sorted_a.size() && sorted_a[i] == x) ++i;
        while (j < sorted_b.size() && sorted_b[j] == x) ++j;
        const double fa = double(i) / double(sorted_a.size());
        const double fb = double(j) / double(sorted_b.size());
        d = std::max(d, std::fabs(fa - fb));
    }
    return d;
}

std::vector<double> sampled_endpoint_sqnorms(const LatentPrior& prior, std::size_t n,
                                             const RngStream& rng, Exec exec) {
    std::vector<double> out(n);
    parallel::for_each_chunk(n, parallel::kDefaultChunks, exec,
                             [&](int chunk, std::size_t begin, std::size_t end) {
                                 RngStream local = rng.split(std::uint64_t(chunk));
                                 for (std::size_t i = begin; i < end; ++i)
                                     out[i] = squared_norm(priors::sample(prior, local));
                             });
    return out;
}

std::vector<double> sampled_midpoint_sqnorms(const LatentPrior& prior, std::size_t n_pairs,
                                             const RngStream& rng, Exec exec) {
    std::vector<double> out(n_pairs);
    parallel::for_each_chunk(
        n_pairs, parallel::kDefaultChunks, exec, [&](int chunk, std::size_t begin, std::size_t end) {
            RngStream local = rng.split(std::uint64_t(chunk));
            for (std::size_t i = begin; i < end; ++i) {
                const LatentVector z0 = priors::sample(prior, local);
                const LatentVector z1 = priors::sample(prior, local);
                double s = 0.0;
                for (std::size_t k = 0; k < z0.size(); ++k) {
                    const double m = 0.5 * (z0[k] + z1[k]);
                    s += m * m;
                }
                out[i] = s;
            }
        });
    return out;
}

std::vector<McReport> mc_endpoint_check(const LatentPrior& prior, std::size_t n,
                                        const RngStream& rng, Exec exec) {
    if (n < 1000) throw InvalidConfig("mc_endpoint_check: n must be >= 1000");
    std::vector<double> sq = sampled_endpoint_sqnorms(prior, n, rng, exec);
    const Moments m = compute_moments(sq);
    const GammaParams law = priors::squared_norm_distribution(prior);

    std::sort(sq.begin(), sq.end());
    const double d = ks_statistic(sq, [&](double x) { return numerics::gamma_cdf(x, law); });

    McReport mean_row{prior_label("endpoint_mean_sqnorm", prior), m.mean, m.se_mean, n,
                      rng.seed(),  d,                             law.mean()};
    mean_row.verdict = four_se_verdict(m.mean, law.mean(), m.se_mean);

    McReport var_row{prior_label("endpoint_var_sqnorm", prior), m.var, m.se_var, n,
                     rng.seed(),  std::nullopt,                  law.variance()};
    var_row.verdict = four_se_verdict(m.var, law.variance(), m.se_var);

    McReport ks_row{prior_label("endpoint_sqnorm_ks", prior), d, 0.0, n, rng.seed(), d,
                    std::nullopt};
    ks_row.verdict =
        d < ks_one_percent_critical(n) ? Verdict::Consistent : Verdict::Inconsistent;

    return {mean_row, var_row, ks_row};
}

McReport mc_midpoint_check(const LatentPrior& prior, std::size_t n_pairs, const RngStream& rng,
                           Exec exec) {
    if (n_pairs < 1000) throw InvalidConfig("mc_midpoint_check: n_pairs must be >= 1000");
    std::vector<double> sq = sampled_midpoint_sqnorms(prior, n_pairs, rng, exec);
    std::sort(sq.begin(), sq.end());
    const priors::MidpointLaw law = priors::midpoint_squared_norm_distribution(prior);
    const double d =
        ks_statistic(sq, [&](double x) { return numerics::gamma_cdf(x, law.params); });

    McReport row{prior_label("midpoint_sqnorm_ks", prior), d, 0.0, n_pairs, rng.seed(), d,
                 std::nullopt};
    if (law.claimed)
        row.verdict = Verdict::Informational;
    else
        row.verdict =
            d < ks_one_percent_critical(n_pairs) ? Verdict::Consistent : Verdict::Inconsistent;
    return row;
}

McReport mc_kl_estimate(const GammaParams& p, const GammaParams& q, std::size_t n,
                        const RngStream& rng, Exec exec) {
    if (n < 10000) throw InvalidConfig("mc_kl_estimate: n must be >= 10000");
    const int n_chunks = parallel::kDefaultChunks;
    std::vector<KahanSum> sums(n_chunks), sums2(n_chunks);
    parallel::for_each_chunk(n, n_chunks, exec,
                             [&](int chunk, std::size_t begin, std::size_t end) {
                                 RngStream local = rng.split(std::uint64_t(chunk));
                                 for (std::size_t i = begin; i < end; ++i) {
                                     const double x = numerics::sample_gamma(p, local);
                                     const double llr = numerics::gamma_log_pdf(x, p) -
                                                        numerics::gamma_log_pdf(x, q);
                                     sums[chunk].add(llr);
                                     sums2[chunk].add(llr * llr);
                                 }
                             });
    KahanSum s, s2;
    for (int c = 0; c < n_chunks; ++c) {
        s.add(sums[c].value());
        s2.add(sums2[c].value());
    }
    const double mean = s.value() / double(n);
    const double var = std::max(0.0, s2.value() / double(n) - mean * mean);
    const double se = std::sqrt(var / double(n));

    std::ostringstream label;
    label << "gamma_kl_mc[shape=" << p.shape << "/" << q.shape << " scale=" << p.scale << "/"
          << q.scale << "]";
    McReport row{label.str(), mean, se, n, rng.seed(), std::nullopt, std::nullopt};
    if (p.shape == q.shape) {
        row.claimed_value = numerics::gamma_kl_same_shape(p.shape, p.scale, q.scale);
        row.verdict = four_se_verdict(mean, *row.claimed_value, se);
    }
    return row;
}

namespace {

LatentVector group_mean(const std::vector<LatentVector>& group, std::size_t dim,
                        const char* label) {
    if (group.empty()) throw MissingGroup(std::string("latent_algebra_score: empty group ") + label);
    LatentVector mean(dim, 0.0);
    for (const auto& z : group) {
        if (z.size() != dim) throw DimensionMismatch("latent_algebra_score: mixed dimensions");
        for (std::size_t i = 0; i < dim; ++i) mean[i] += z[i];
    }
    for (auto& x : mean) x /= double(group.size());
    return mean;
}

void accumulate_sqnorms(const std::vector<LatentVector>& group, KahanSum& sum,
                        std::size_t& count) {
    for (const auto& z : group) {
        sum.add(squared_norm(z));
        ++count;
    }
}

} // namespace

double latent_algebra_score(std::span<const AttributeGroups> groups_per_pair, int n_attributes,
                            LasNormalization normalization) {
    const std::size_t expected_pairs =
        std::size_t(n_attributes) * std::size_t(n_attributes - 1) / 2;
    if (n_attributes < 2 || groups_per_pair.size() != expected_pairs)
        throw MissingGroup("latent_algebra_score: need one group set per attribute pair");

    std::size_t dim = 0;
    for (const auto& g : groups_per_pair)
        for (const auto* set : {&g.with_both, &g.second_only, &g.with_neither, &g.first_only})
            if (!set->empty()) {
                dim = set->front().size();
                break;
            }
    if (dim == 0) throw MissingGroup("latent_algebra_score: all groups empty");

    double global_m = 0.0;
    if (normalization == LasNormalization::Global) {
        KahanSum sum;
        std::size_t count = 0;
        for (const auto& g : groups_per_pair) {
            accumulate_sqnorms(g.with_both, sum, count);
            accumulate_sqnorms(g.second_only, sum, count);
            accumulate_sqnorms(g.with_neither, sum, count);
            accumulate_sqnorms(g.first_only, sum, count);
        }
        global_m = sum.value() / double(count);
    }

    KahanSum total;
    for (const auto& g : groups_per_pair) {
        const LatentVector ab = group_mean(g.with_both, dim, "[A,B]");
        const LatentVector a_b = group_mean(g.second_only, dim, "[a,B]");
        const LatentVector none = group_mean(g.with_neither, dim, "[a,b]");
        const LatentVector b_a = group_mean(g.first_only, dim, "[A,b]");
        double defect = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            const double e = ab[i] - a_b[i] + none[i] - b_a[i];
            defect += e * e;
        }
        double m = global_m;
        if (normalization == LasNormalization::PerPair) {
            KahanSum sum;
            std::size_t count = 0;
            accumulate_sqnorms(g.with_both, sum, count);
            accumulate_sqnorms(g.second_only, sum, count);
            accumulate_sqnorms(g.with_neither, sum, count);
            accumulate_sqnorms(g.first_only, sum, count);
            m = sum.value() / double(count);
        }
        total.add(defect / m);
    }
    return 2.0 / (double(n_attributes) * double(n_attributes - 1)) * total.value();
}

std::vector<AttributeGroups> synthetic_attribute_groups(int n_attributes, int dim,
                                                        int vectors_per_group,
                                                        double noise_sigma, RngStream& rng) {
    if (n_attributes < 2 || dim < 1 || vectors_per_group < 1)
        throw InvalidConfig("synthetic_attribute_groups: bad parameters");

    std::vector<LatentVector> directions;
    directions.reserve(std::size_t(n_attributes));
    for (int a = 0; a < n_attributes; ++a)
        directions.push_back(numerics::sample_unit_sphere(dim, rng));
    const LatentVector base = numerics::sample_unit_sphere(dim, rng);

    auto make_group = [&](int i, int j, bool has_i, bool has_j) {
        std::vector<LatentVector> group;
        group.reserve(std::size_t(vectors_per_group));
        for (int k = 0; k < vectors_per_group; ++k) {
            LatentVector z = base;
            for (int c = 0; c < dim; ++c) {
                if (has_i) z[std::size_t(c)] += directions[std::size_t(i)][std::size_t(c)];
                if (has_j) z[std::size_t(c)] += directions[std::size_t(j)][std::size_t(c)];
                z[std::size_t(c)] += noise_sigma * rng.normal();
            }
            group.push_back(std::move(z));
        }
        return group;
    };

    std::vector<AttributeGroups> out;
    for (int i = 0; i < n_attributes; ++i)
        for (int j = i + 1; j < n_attributes; ++j) {
            AttributeGroups g;
            g.with_both = make_group(i, j, true, true);
            g.second_only = make_group(i, j, false, true);
            g.with_neither = make_group(i, j, false, false);
            g.first_only = make_group(i, j, true, false);
            out.push_back(std::move(g));
        }
    return out;
}

} // namespace latentgeom::verify
