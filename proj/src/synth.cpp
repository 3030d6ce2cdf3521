#include "socnet/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "socnet/error.hpp"
#include "socnet/random.hpp"

namespace socnet {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void check_rate(double r, const char* what) {
    if (!(r >= 0.0 && r <= 1.0)) {
        throw InputError(std::string(what) + " must lie in [0, 1]");
    }
}

std::vector<double> average_ranks(const std::vector<double>& x) {
    std::vector<std::size_t> idx(x.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> ranks(x.size());
    std::size_t i = 0;
    while (i < idx.size()) {
        std::size_t j = i;
        while (j + 1 < idx.size() && x[idx[j + 1]] == x[idx[i]]) {
            ++j;
        }
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[idx[k]] = r;
        }
        i = j + 1;
    }
    return ranks;
}

}  // namespace

void NoiseParams::validate() const {
    check_rate(fp_rate, "noise.fp_rate");
    check_rate(fn_rate, "noise.fn_rate");
    check_rate(id_confusion_rate, "noise.id_confusion_rate");
    if (!(jitter_px >= 0.0) || !std::isfinite(jitter_px)) {
        throw InputError("noise.jitter_px must be >= 0");
    }
}

Troop generate_troop(std::uint64_t seed, int n_individuals, int n_matrilines) {
    if (n_individuals < 2) {
        throw InputError("a troop needs at least two individuals");
    }
    if (n_matrilines < 1 || n_matrilines > n_individuals) {
        throw InputError("n_matrilines must lie in [1, n_individuals]");
    }
    Xorshift64Star rng(Xorshift64Star::derive(seed, 1));
    Troop troop;
    const int width = n_individuals >= 100 ? 3 : 2;
    std::vector<std::string> names;
    for (int i = 0; i < n_individuals; ++i) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "ind%0*d", width, i + 1);
        Individual ind;
        ind.name = buf;
        troop.matriline.push_back(i % n_matrilines);
        // the first member of each matriline is its adult female founder
        if (i < n_matrilines) {
            ind.sex = Sex::Female;
            ind.age_years = 10 + static_cast<int>(rng.below(12));
        } else {
            ind.sex = rng.bernoulli(0.5) ? Sex::Female : Sex::Male;
            ind.age_years = static_cast<int>(rng.below(10));
        }
        names.push_back(ind.name);
        troop.roster.individuals.push_back(std::move(ind));
    }
    troop.latent_weights = AssociationMatrix(names);
    for (int i = 0; i < n_individuals; ++i) {
        for (int j = i + 1; j < n_individuals; ++j) {
            const bool kin = troop.matriline[static_cast<std::size_t>(i)] == troop.matriline[static_cast<std::size_t>(j)];
            const double w = kin ? rng.uniform(0.3, 0.8) : rng.uniform(0.0, 0.1);
            troop.latent_weights.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), w);
        }
    }
    return troop;
}

OccurrenceLedger sample_ledger(const SynthScenario& scenario, int n_videos, std::uint64_t seed) {
    if (n_videos < 1) {
        throw InputError("n_videos must be >= 1");
    }
    const std::size_t n = scenario.roster.individuals.size();
    if (n == 0 || scenario.latent_weights.size() != n) {
        throw InputError("scenario roster and latent weights disagree");
    }
    Xorshift64Star rng(Xorshift64Star::derive(seed, 2));
    OccurrenceLedger ledger;
    const int width = std::max(4, static_cast<int>(std::to_string(n_videos).size()));
    for (int v = 0; v < n_videos; ++v) {
        auto digits = std::to_string(v + 1);
        LedgerEntry e;
        e.video_id = "v" + std::string(static_cast<std::size_t>(width) - std::min<std::size_t>(digits.size(), width), '0') + digits;
        const std::size_t focal = static_cast<std::size_t>(v) % n;
        e.present.insert(scenario.roster.individuals[focal].name);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == focal) {
                continue;
            }
            // draw for every candidate so the stream position does not depend on outcomes
            const double u = rng.uniform();
            if (u < scenario.latent_weights(focal, j)) {
                e.present.insert(scenario.roster.individuals[j].name);
            }
        }
        ledger.entries.push_back(std::move(e));
    }
    return ledger;
}

SampledStream sample_detection_stream(const SynthScenario& scenario, const std::string& video_id, int n_frames,
                                      std::uint64_t seed, FrameSize frame) {
    scenario.noise.validate();
    if (n_frames < 0) {
        throw InputError("n_frames must be >= 0");
    }
    const auto entry = std::find_if(scenario.ground_truth_ledger.entries.begin(),
                                    scenario.ground_truth_ledger.entries.end(),
                                    [&](const LedgerEntry& e) { return e.video_id == video_id; });
    if (entry == scenario.ground_truth_ledger.entries.end()) {
        throw InputError("video '" + video_id + "' is not in the scenario ledger");
    }
    const auto& roster = scenario.roster;
    const std::size_t n = roster.individuals.size();
    const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    const std::size_t rows = (n + cols - 1) / cols;
    const double cell_w = frame.width / static_cast<double>(cols);
    const double cell_h = frame.height / static_cast<double>(rows);
    const auto& noise = scenario.noise;

    Xorshift64Star rng(Xorshift64Star::derive(seed, fnv1a(video_id)));

    struct Actor {
        std::size_t roster_index;
        BBox anchor;
        double jitter;
    };
    std::vector<Actor> actors;
    for (std::size_t i = 0; i < n; ++i) {
        if (!entry->present.contains(roster.individuals[i].name)) {
            continue;
        }
        const double h = std::min(cell_h, cell_w / 0.8) * rng.uniform(0.4, 0.6);
        const double w = 0.8 * h;
        const double cx = (static_cast<double>(i % cols) + 0.5) * cell_w;
        const double cy = (static_cast<double>(i / cols) + 0.5) * cell_h;
        // keep the jittered box inside its cell
        const double slack = std::min((cell_w - w) / 2.0, (cell_h - h) / 2.0);
        actors.push_back({i, BBox{cx - w / 2.0, cy - h / 2.0, w, h}, std::min(noise.jitter_px, slack * 0.9)});
    }

    auto scores_for = [&](std::size_t truth) {
        ClassScores s;
        const double off = n > 1 ? noise.id_confusion_rate / static_cast<double>(n - 1) : 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            s[roster.individuals[k].name] = k == truth ? 1.0 - noise.id_confusion_rate : off;
        }
        return s;
    };
    ClassScores uniform_scores;
    for (const auto& ind : roster.individuals) {
        uniform_scores[ind.name] = 1.0 / static_cast<double>(n);
    }

    SampledStream out;
    out.stream.video_id = video_id;
    std::vector<Track> truth(actors.size());
    for (std::size_t a = 0; a < actors.size(); ++a) {
        truth[a].video_id = video_id;
        truth[a].identity = Identity{roster.individuals[actors[a].roster_index].name, 1.0 - noise.id_confusion_rate};
    }
    for (int f = 0; f < n_frames; ++f) {
        Frame fr;
        fr.frame_index = f;
        for (std::size_t a = 0; a < actors.size(); ++a) {
            const auto& act = actors[a];
            const double dx = rng.uniform(-act.jitter, act.jitter);
            const double dy = rng.uniform(-act.jitter, act.jitter);
            const double score = rng.uniform(0.6, 1.0);
            if (rng.bernoulli(noise.fn_rate)) {
                continue;
            }
            Detection d;
            d.bbox = BBox{act.anchor.x + dx, act.anchor.y + dy, act.anchor.w, act.anchor.h};
            d.score = score;
            d.class_scores = scores_for(act.roster_index);
            truth[a].observations.push_back({f, d.bbox, d.score, d.class_scores});
            fr.detections.push_back(std::move(d));
        }
        if (rng.bernoulli(noise.fp_rate)) {
            const double h = std::min(cell_h, cell_w / 0.8) * rng.uniform(0.4, 0.6);
            const double w = 0.8 * h;
            Detection d;
            d.bbox = BBox{rng.uniform(0.0, frame.width - w), rng.uniform(0.0, frame.height - h), w, h};
            d.score = rng.uniform(0.05, 0.7);
            d.class_scores = uniform_scores;
            fr.detections.push_back(std::move(d));
            ++out.spurious;
        }
        out.stream.frames.push_back(std::move(fr));
    }
    std::int64_t next_id = 0;
    for (auto& t : truth) {
        if (!t.observations.empty()) {
            t.track_id = next_id++;
            out.truth.push_back(std::move(t));
        }
    }
    // ids follow first appearance, the order in which a tracker would open them
    std::stable_sort(out.truth.begin(), out.truth.end(),
                     [](const Track& a, const Track& b) { return a.first_frame() < b.first_frame(); });
    for (std::size_t k = 0; k < out.truth.size(); ++k) {
        out.truth[k].track_id = static_cast<std::int64_t>(k);
    }
    return out;
}

void SynthConfig::validate() const {
    noise.validate();
    if (n_individuals < 2 || n_matrilines < 1 || n_matrilines > n_individuals) {
        throw InputError("synth: need n_individuals >= 2 and 1 <= n_matrilines <= n_individuals");
    }
    if (n_videos < 1 || n_frames < 0) {
        throw InputError("synth: need n_videos >= 1 and n_frames >= 0");
    }
    if (!(frame.width > 0.0 && frame.height > 0.0)) {
        throw InputError("synth: frame size must be positive");
    }
}

GeneratedScenario generate_scenario(const SynthConfig& config) {
    config.validate();
    GeneratedScenario out;
    auto troop = generate_troop(config.seed, config.n_individuals, config.n_matrilines);
    auto& sc = out.scenario;
    sc.roster = std::move(troop.roster);
    sc.matriline = std::move(troop.matriline);
    sc.latent_weights = std::move(troop.latent_weights);
    sc.noise = config.noise;
    sc.ground_truth_ledger = sample_ledger(sc, config.n_videos, config.seed);
    for (const auto& e : sc.ground_truth_ledger.entries) {
        auto sampled = sample_detection_stream(sc, e.video_id, config.n_frames, config.seed, config.frame);
        sc.ground_truth_tracks[e.video_id] = std::move(sampled.truth);
        out.spurious += sampled.spurious;
        out.streams.push_back(std::move(sampled.stream));
    }
    return out;
}

double spearman_correlation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2) {
        throw InputError("spearman correlation needs two equal-length samples of size >= 2");
    }
    const auto ra = average_ranks(a);
    const auto rb = average_ranks(b);
    const double n = static_cast<double>(a.size());
    const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
    const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        sab += (ra[i] - ma) * (rb[i] - mb);
        saa += (ra[i] - ma) * (ra[i] - ma);
        sbb += (rb[i] - mb) * (rb[i] - mb);
    }
    if (saa == 0.0 || sbb == 0.0) {
        return 0.0;
    }
    return sab / std::sqrt(saa * sbb);
}

}  // namespace socnet
