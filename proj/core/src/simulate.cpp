#include "exkit/simulate.hpp"

#include "exkit/error.hpp"
#include "exkit/fgn.hpp"
#include "exkit/parallel.hpp"
#include "exkit/rng.hpp"

#include <cmath>
#include <variant>

namespace exkit {

void SimConfig::validate() const
{
    if (!(dt > 0.0) || !std::isfinite(dt)) fail(ErrorCode::InvalidParam, "dt must be positive");
    if (n_steps < 1 || n_paths < 1) fail(ErrorCode::InvalidParam, "step and path counts must be >= 1");
    if (!std::isfinite(x0)) fail(ErrorCode::InvalidParam, "x0 must be finite");
}

namespace {

std::vector<double> grid(const SimConfig& c, std::size_t samples)
{
    std::vector<double> t(samples);
    for (std::size_t i = 0; i < samples; ++i) t[i] = static_cast<double>(i) * c.dt;
    return t;
}

// Builds each path from `fill(stream, values)` with values[0] = x0 preset.
template <class Fill>
std::vector<Path> batch(const SimConfig& c, Fill fill)
{
    c.validate();
    const std::vector<double> times = grid(c, c.n_steps + 1);
    std::vector<std::vector<double>> values(c.n_paths);
    parallel_for(c.n_paths, c.threads, [&](std::size_t i) {
        RandomStream rng(c.seed, i);
        std::vector<double> v(c.n_steps + 1);
        v[0] = c.x0;
        fill(rng, v);
        values[i] = std::move(v);
    });
    std::vector<Path> out;
    out.reserve(c.n_paths);
    for (auto& v : values) out.emplace_back(times, std::move(v));
    return out;
}

// One exact transition per call: x -> a * x + b + s * z.
struct LinearStep {
    double a = 1.0;
    double b = 0.0;
    double s = 0.0;

    double operator()(double x, RandomStream& rng) const { return a * x + b + s * rng.normal(); }
};

LinearStep markov_step(const DiffusionModel& model, double dt)
{
    if (const auto* bm = std::get_if<Brownian>(&model)) return {1.0, 0.0, bm->sigma * std::sqrt(dt)};
    if (const auto* ou = std::get_if<OrnsteinUhlenbeck>(&model)) {
        const double decay = std::exp(-ou->alpha * dt);
        const double var = ou->stationary_variance() * -std::expm1(-2.0 * ou->alpha * dt);
        return {decay, ou->mu * -std::expm1(-ou->alpha * dt), std::sqrt(var)};
    }
    fail(ErrorCode::InvalidParam, "model is not Markovian; use bm or ou");
}

} // namespace

std::vector<Path> simulate_bm(double sigma, const SimConfig& config)
{
    validate(Brownian{sigma});
    const double s = sigma * std::sqrt(config.dt);
    return batch(config, [s](RandomStream& rng, std::vector<double>& v) {
        for (std::size_t k = 1; k < v.size(); ++k) v[k] = v[k - 1] + s * rng.normal();
    });
}

std::vector<Path> simulate_ou(double alpha, double mu, double gamma, const SimConfig& config)
{
    const OrnsteinUhlenbeck model{alpha, mu, gamma};
    validate(model);
    config.validate();
    const LinearStep step = markov_step(model, config.dt);
    return batch(config, [step](RandomStream& rng, std::vector<double>& v) {
        for (std::size_t k = 1; k < v.size(); ++k) v[k] = step(v[k - 1], rng);
    });
}

std::vector<Path> simulate_fbm(double hurst, const SimConfig& config)
{
    validate(FractionalBrownian{hurst});
    config.validate();
    const FgnGenerator gen(config.n_steps, hurst);
    const double scale = std::pow(config.dt, hurst);
    return batch(config, [&gen, scale](RandomStream& rng, std::vector<double>& v) {
        std::vector<double> noise(v.size() - 1);
        gen.generate(rng, noise);
        for (std::size_t k = 1; k < v.size(); ++k) v[k] = v[k - 1] + scale * noise[k - 1];
    });
}

std::vector<Path> simulate_fou(double lambda, double gamma, double hurst, const SimConfig& config)
{
    validate(FractionalOU{lambda, gamma, hurst});
    config.validate();
    const FgnGenerator gen(config.n_steps, hurst);
    const double scale = gamma * std::pow(config.dt, hurst);
    const double keep = 1.0 - lambda * config.dt;
    return batch(config, [&gen, scale, keep](RandomStream& rng, std::vector<double>& v) {
        std::vector<double> noise(v.size() - 1);
        gen.generate(rng, noise);
        for (std::size_t k = 1; k < v.size(); ++k) v[k] = keep * v[k - 1] + scale * noise[k - 1];
    });
}

std::vector<Path> simulate(const DiffusionModel& model, const SimConfig& config)
{
    if (const auto* m = std::get_if<Brownian>(&model)) return simulate_bm(m->sigma, config);
    if (const auto* m = std::get_if<OrnsteinUhlenbeck>(&model)) return simulate_ou(m->alpha, m->mu, m->gamma, config);
    if (const auto* m = std::get_if<FractionalBrownian>(&model)) return simulate_fbm(m->hurst, config);
    const auto& f = std::get<FractionalOU>(model);
    return simulate_fou(f.lambda, f.gamma, f.hurst, config);
}

ConcatBatch simulate_concat(const ConcatSpec& spec, const SimConfig& config)
{
    if (!(spec.delta > 0.0) || !std::isfinite(spec.delta)) fail(ErrorCode::InvalidParam, "delta must be positive");
    if (spec.max_segment_steps < 1) fail(ErrorCode::InvalidParam, "segment guard must be >= 1");
    validate(spec.up_model);
    validate(spec.down_model);
    SimConfig c = config;
    if (spec.horizon > 0.0) c.n_steps = static_cast<std::size_t>(std::ceil(spec.horizon / c.dt - 1e-9));
    c.validate();
    const LinearStep up = markov_step(spec.up_model, c.dt);
    const LinearStep down = markov_step(spec.down_model, c.dt);

    const std::vector<double> times = grid(c, c.n_steps + 1);
    std::vector<std::vector<double>> values(c.n_paths);
    ConcatBatch out;
    out.labels.resize(c.n_paths);
    parallel_for(c.n_paths, c.threads, [&](std::size_t i) {
        RandomStream rng(c.seed, i);
        std::vector<double> v(c.n_steps + 1);
        std::vector<SegmentLabel> lab(c.n_steps + 1, SegmentLabel::up);
        v[0] = 0.0;
        bool rising = true;
        std::size_t segment_steps = 0;
        for (std::size_t k = 1; k < v.size(); ++k) {
            if (++segment_steps > spec.max_segment_steps)
                fail(ErrorCode::SegmentTimeout, "segment exceeded " + std::to_string(spec.max_segment_steps) +
                                                    " steps without crossing (path " + std::to_string(i) + ")");
            if (rising) {
                v[k] = up(v[k - 1], rng);
                lab[k] = SegmentLabel::up;
                if (v[k] >= spec.delta) {
                    rising = false;
                    segment_steps = 0;
                }
            } else {
                v[k] = down(v[k - 1], rng);
                lab[k] = SegmentLabel::down;
                if (v[k] <= 0.0) {
                    v[k] = 0.0;
                    rising = true;
                    segment_steps = 0;
                }
            }
        }
        values[i] = std::move(v);
        out.labels[i] = std::move(lab);
    });
    out.paths.reserve(c.n_paths);
    for (auto& v : values) out.paths.emplace_back(times, std::move(v));
    return out;
}

} // namespace exkit
