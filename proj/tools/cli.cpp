#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <map>
#include <json.hpp>
#include <optional>
#include <set>
#include <ostream>

#include "socnet/config.hpp"
#include "socnet/evaluation.hpp"
#include "socnet/ingest.hpp"
#include "socnet/pipeline.hpp"
#include "socnet/synth.hpp"

namespace socnet::cli {

namespace fs = std::filesystem;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config_path;
    std::map<std::string, std::string> overrides;  // config key -> flag value
    bool error_json = false;

    // per-subcommand paths
    std::vector<std::string> detections;
    std::string detections_dir;
    std::string video_id;
    std::string gt;
    std::string samples;
    std::vector<std::string> tracks;
    std::string ledger;
    std::string matrix;
    std::string report;
    std::string out;
    std::string svg;
    std::string dot;
    std::string ledger_out;
    std::string counts_out;
};

PipelineConfig resolve_config(const Options& o) {
    PipelineConfig c = o.config_path.empty() ? PipelineConfig{} : load_config(o.config_path);
    // flags are applied in key order so the result does not depend on argv order
    for (const auto& key : config_keys()) {
        if (auto it = o.overrides.find(key.name); it != o.overrides.end()) {
            apply_config_value(c, key.name, it->second);
        }
    }
    c.validate();
    return c;
}

std::uint64_t require_seed(const PipelineConfig& c) {
    if (!c.seed) {
        throw UsageError("--seed is required (no implicit entropy)");
    }
    return *c.seed;
}

std::optional<Roster> load_roster(const PipelineConfig& c) {
    if (c.roster_path.empty()) {
        return std::nullopt;
    }
    return parse_roster(read_file(c.roster_path));
}

std::string stem(const std::string& path) { return fs::path(path).stem().string(); }

std::vector<std::string> detection_files(const Options& o) {
    std::vector<std::string> files = o.detections;
    if (!o.detections_dir.empty()) {
        std::vector<std::string> found;
        for (const auto& e : fs::directory_iterator(o.detections_dir)) {
            if (e.is_regular_file() && e.path().extension() == ".jsonl") {
                found.push_back(e.path().string());
            }
        }
        std::sort(found.begin(), found.end());
        files.insert(files.end(), found.begin(), found.end());
    }
    if (files.empty()) {
        throw UsageError("no detection files given (--detections or --detections-dir)");
    }
    return files;
}

std::vector<DetectionStream> load_streams(const std::vector<std::string>& files, const Roster* roster) {
    std::vector<DetectionStream> out;
    for (const auto& f : files) {
        try {
            out.push_back(parse_detection_stream(read_file(f), stem(f), roster));
        } catch (const ParseError& e) {
            throw ParseError(f + ":" + e.locus(), e.what());
        }
    }
    return out;
}

void report_conflicts(const std::vector<IdentityConflict>& conflicts, std::ostream& err) {
    for (const auto& c : conflicts) {
        err << "warning: video " << c.video_id << " frame " << c.frame_index << ": tracks " << c.track_a << " and "
            << c.track_b << " both identified as " << c.name << "\n";
    }
}

void summarize(const NetworkReport& r, const PipelineConfig& c, std::ostream& out) {
    const bool binary = c.efficiency == EfficiencyMode::Binary;
    out << "individuals " << r.individuals.size() << "  density " << format_6g(r.density) << "  global efficiency ("
        << (binary ? "binary" : "weighted")
        << ") " << format_6g(binary ? r.global_efficiency_binary : r.global_efficiency_weighted) << "\n";
}

int cmd_track(const Options& o, std::ostream& out) {
    const auto c = resolve_config(o);
    const auto roster = load_roster(c);
    if (o.detections.size() != 1) {
        throw UsageError("track takes exactly one --detections file");
    }
    auto streams = load_streams(o.detections, roster ? &*roster : nullptr);
    if (!o.video_id.empty()) {
        streams[0].video_id = o.video_id;
    }
    const Roster r = roster ? *roster : roster_from_streams(streams);
    const auto tracks = track_video(streams[0], r, c.tracker);
    write_file_atomic(o.out, write_tracks(tracks));
    const auto identified = std::count_if(tracks.begin(), tracks.end(), [](const Track& t) { return t.identity.has_value(); });
    out << "tracks " << tracks.size() << "  identified " << identified << "\n";
    return kOk;
}

int cmd_eval_det(const Options& o, std::ostream& out) {
    const auto c = resolve_config(o);
    const auto gt = parse_ground_truth(read_file(o.gt));
    std::vector<EvalImage> images(gt.images.size());
    std::map<std::pair<std::string, std::int64_t>, std::size_t> slot;
    std::map<std::int64_t, std::size_t> by_id;
    for (std::size_t i = 0; i < gt.images.size(); ++i) {
        slot[{gt.images[i].video_id, gt.images[i].frame_index}] = i;
        by_id[gt.images[i].image_id] = i;
    }
    for (const auto& a : gt.annotations) {
        images[by_id.at(a.image_id)].gts.push_back(a.bbox);
    }
    std::size_t n_preds = 0;
    for (const auto& s : load_streams(detection_files(o), nullptr)) {
        for (const auto& f : s.frames) {
            auto [it, fresh] = slot.emplace(std::make_pair(s.video_id, f.frame_index), images.size());
            if (fresh) {
                images.emplace_back();  // frame without annotations: every prediction is a false positive
            }
            for (const auto& d : f.detections) {
                images[it->second].preds.push_back({d.bbox, d.score});
                ++n_preds;
            }
        }
    }
    DetectionMetrics m;
    m.iou_threshold = c.eval_iou_threshold;
    m.score_threshold = c.eval_score_threshold;
    m.ap_method = config_value(c, "eval.ap_method");
    m.average_precision = average_precision(images, c.eval_iou_threshold, c.ap_method);
    m.false_negative_rate = false_negative_rate(images, c.eval_iou_threshold, c.eval_score_threshold);
    m.predictions = n_preds;
    m.ground_truths = gt.annotations.size();
    m.curve = pr_curve(images, c.eval_iou_threshold);
    write_file_atomic(o.out, write_detection_metrics(m));
    out << "AP " << format_6g(m.average_precision) << "  FNR " << format_6g(m.false_negative_rate) << "\n";
    return kOk;
}

int cmd_eval_id(const Options& o, std::ostream& out) {
    const auto c = resolve_config(o);
    const auto samples = parse_id_samples(read_file(o.samples));
    auto roster = load_roster(c);
    if (!roster) {
        std::set<std::string> names;
        for (const auto& s : samples) {
            names.insert(s.true_label);
            for (const auto& [n, _] : s.class_scores) {
                names.insert(n);
            }
        }
        roster.emplace();
        for (const auto& n : names) {
            roster->individuals.push_back(Individual{n, Sex::Unknown, std::nullopt});
        }
    }
    IdentificationMetrics m;
    m.samples = samples.size();
    m.normalized = c.confusion_normalize;
    for (const int k : c.topk) {
        m.topk.emplace_back(k, topk_accuracy(samples, k));
    }
    m.confusion = confusion_matrix(samples, *roster, c.confusion_normalize);
    write_file_atomic(o.out, write_identification_metrics(m));
    for (const auto& [k, acc] : m.topk) {
        out << "top-" << k << " " << format_6g(acc) << "  ";
    }
    out << "\n";
    return kOk;
}

void write_association(const AssociationStage& a, const std::string& matrix_path,
                       const std::string& ledger_path, const std::string& counts_path) {
    if (!ledger_path.empty()) {
        write_file_atomic(ledger_path, write_ledger(a.ledger, nullptr));
    }
    if (!counts_path.empty()) {
        write_file_atomic(counts_path, write_counts(a.counts, a.order));
    }
    write_file_atomic(matrix_path, write_matrix(a.matrix));
}

int cmd_cooccur(const Options& o, std::ostream& out, std::ostream& err) {
    const auto c = resolve_config(o);
    const auto roster = load_roster(c);
    const Roster* rp = roster ? &*roster : nullptr;
    if (o.tracks.empty() == o.ledger.empty()) {
        throw UsageError("cooccur takes either --tracks or --ledger");
    }
    AssociationStage a;
    if (!o.ledger.empty()) {
        a = associate(parse_occurrence_ledger(read_file(o.ledger)), rp);
    } else {
        std::vector<Track> all;
        for (const auto& f : o.tracks) {
            auto t = parse_tracks(read_file(f));
            all.insert(all.end(), std::make_move_iterator(t.begin()), std::make_move_iterator(t.end()));
        }
        a = associate(group_tracks(all), rp, c);
        report_conflicts(a.conflicts, err);
    }
    write_association(a, o.out, o.ledger_out, o.counts_out);
    out << "videos " << a.ledger.entries.size() << "  individuals " << a.order.size() << "  positive dyads "
        << a.matrix.positive_dyads() << "\n";
    return kOk;
}

int cmd_network(const Options& o, std::ostream& out) {
    const auto c = resolve_config(o);
    const auto m = parse_association_matrix(read_file(o.matrix));
    const auto r = analyse(m, c);
    write_file_atomic(o.out, write_report(r));
    summarize(r, c, out);
    return kOk;
}

int cmd_layout(const Options& o, std::ostream& out) {
    const auto c = resolve_config(o);
    const auto seed = require_seed(c);
    if (o.svg.empty() && o.dot.empty()) {
        throw UsageError("layout needs --svg and/or --dot");
    }
    const auto m = parse_association_matrix(read_file(o.matrix));
    const auto report = o.report.empty() ? analyse(m, c) : parse_report(read_file(o.report));
    if (report.individuals.size() != m.size()) {
        throw ValidationError("report and matrix describe different individuals");
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (report.individuals[i].name != m.names()[i]) {
            throw ValidationError("report and matrix disagree on individual " + std::to_string(i + 1));
        }
    }
    const auto r = render(m, report, c.gem, seed);
    if (!o.svg.empty()) {
        write_file_atomic(o.svg, r.svg);
    }
    if (!o.dot.empty()) {
        write_file_atomic(o.dot, r.dot);
    }
    out << "layout rounds " << r.layout.rounds_used << "\n";
    return kOk;
}

GroundTruthSet scenario_ground_truth(const GeneratedScenario& g, const SynthConfig& cfg) {
    GroundTruthSet gt;
    std::int64_t next_image = 1;
    for (const auto& s : g.streams) {
        const auto& truth = g.scenario.ground_truth_tracks.at(s.video_id);
        for (const auto& f : s.frames) {
            GtImage img;
            img.image_id = next_image++;
            img.video_id = s.video_id;
            img.frame_index = f.frame_index;
            img.width = static_cast<int>(cfg.frame.width);
            img.height = static_cast<int>(cfg.frame.height);
            img.file_name = s.video_id + "/" + std::to_string(f.frame_index) + ".jpg";
            for (const auto& t : truth) {
                for (const auto& ob : t.observations) {
                    if (ob.frame_index == f.frame_index) {
                        gt.annotations.push_back({img.image_id, ob.bbox, t.identity->name});
                    }
                }
            }
            gt.images.push_back(std::move(img));
        }
    }
    return gt;
}

int cmd_synth(const Options& o, std::ostream& out) {
    auto c = resolve_config(o);
    c.synth.seed = require_seed(c);
    if (c.out_dir.empty()) {
        throw UsageError("synth needs --out-dir");
    }
    const fs::path dir(c.out_dir);
    const auto g = generate_scenario(c.synth);
    const auto& sc = g.scenario;
    write_file_atomic((dir / "roster.csv").string(), write_roster(sc.roster));
    write_file_atomic((dir / "latent_matrix.csv").string(), write_matrix(sc.latent_weights));
    write_file_atomic((dir / "ledger.csv").string(), write_ledger(sc.ground_truth_ledger, &sc.roster));
    const auto oracle = associate(sc.ground_truth_ledger, &sc.roster);
    write_file_atomic((dir / "oracle_matrix.csv").string(), write_matrix(oracle.matrix));
    for (const auto& s : g.streams) {
        write_file_atomic((dir / "detections" / (s.video_id + ".jsonl")).string(), write_detection_stream(s));
        write_file_atomic((dir / "truth" / (s.video_id + ".jsonl")).string(),
                          write_tracks(sc.ground_truth_tracks.at(s.video_id)));
    }
    write_file_atomic((dir / "ground_truth.json").string(), write_ground_truth(scenario_ground_truth(g, c.synth)));
    out << "videos " << g.streams.size() << "  individuals " << sc.roster.individuals.size() << "  spurious boxes "
        << g.spurious << "\n";
    return kOk;
}

int cmd_pipeline(const Options& o, std::ostream& out, std::ostream& err) {
    const auto c = resolve_config(o);
    const auto seed = require_seed(c);
    if (c.out_dir.empty()) {
        throw UsageError("pipeline needs --out-dir");
    }
    const auto roster = load_roster(c);
    const Roster* rp = roster ? &*roster : nullptr;
    const auto streams = load_streams(detection_files(o), rp);
    const auto res = run_pipeline(streams, rp, c, seed);
    report_conflicts(res.association.conflicts, err);
    const fs::path dir(c.out_dir);
    for (const auto& v : res.tracks) {
        write_file_atomic((dir / "tracks" / (v.video_id + ".jsonl")).string(), write_tracks(v.tracks));
    }
    write_association(res.association, (dir / "matrix.csv").string(), (dir / "ledger.csv").string(),
                      (dir / "counts.json").string());
    write_file_atomic((dir / "report.json").string(), write_report(res.report));
    write_file_atomic((dir / "network.svg").string(), res.rendering.svg);
    write_file_atomic((dir / "network.dot").string(), res.rendering.dot);
    summarize(res.report, c, out);
    return kOk;
}

void emit_error(std::ostream& err, bool as_json, int code, const char* kind, const std::string& message,
                const std::string& key = {}) {
    if (as_json) {
        nlohmann::ordered_json j;
        j["error"] = kind;
        j["exit_code"] = code;
        j["message"] = message;
        if (!key.empty()) {
            j["key"] = key;
        }
        err << j.dump() << "\n";
    } else {
        err << "socnet: " << kind << " error: " << message << "\n";
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Social network analysis from identified face detections", "socnet"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--config", o.config_path, "flat key = value configuration file")->check(CLI::ExistingFile);
    app.add_flag("--error-json", o.error_json, "report failures as one JSON line on standard error");
    for (const auto& key : config_keys()) {
        std::string names = "--" + key.name;
        if (key.name == "io.roster") {
            names += ",--roster";
        } else if (key.name == "io.out_dir") {
            names += ",--out-dir";
        }
        app.add_option_function<std::string>(
               names, [&o, k = key.name](const std::string& v) { o.overrides[k] = v; },
               key.help + " [" + key.type + "]")
            ->group("Configuration keys");
    }

    auto* track = app.add_subcommand("track", "link detections of one video into identified tracks");
    track->add_option("--detections", o.detections, "detection JSONL")->required()->expected(1);
    track->add_option("--video-id", o.video_id, "video id (default: file stem)");
    track->add_option("--out", o.out, "tracks JSONL")->required();

    auto* eval_det = app.add_subcommand("eval-det", "average precision and false-negative rate");
    eval_det->add_option("--gt", o.gt, "COCO ground truth")->required();
    eval_det->add_option("--detections", o.detections, "detection JSONL per video (id = file stem)");
    eval_det->add_option("--detections-dir", o.detections_dir, "directory of detection JSONL files");
    eval_det->add_option("--out", o.out, "metrics JSON")->required();

    auto* eval_id = app.add_subcommand("eval-id", "top-k accuracy and confusion matrix");
    eval_id->add_option("--samples", o.samples, "identification samples JSONL")->required();
    eval_id->add_option("--out", o.out, "metrics JSON")->required();

    auto* cooccur = app.add_subcommand("cooccur", "occurrence ledger and simple-ratio association matrix");
    cooccur->add_option("--tracks", o.tracks, "track JSONL files");
    cooccur->add_option("--ledger", o.ledger, "ledger CSV");
    cooccur->add_option("--out", o.out, "matrix CSV")->required();
    cooccur->add_option("--ledger-out", o.ledger_out, "ledger CSV built from tracks");
    cooccur->add_option("--counts-out", o.counts_out, "occurrence counts JSON");

    auto* network = app.add_subcommand("network", "density, efficiency and node centralities");
    network->add_option("--matrix", o.matrix, "association matrix CSV")->required();
    network->add_option("--out", o.out, "report JSON")->required();

    auto* layout = app.add_subcommand("layout", "GEM layout rendered as SVG and DOT");
    layout->add_option("--matrix", o.matrix, "association matrix CSV")->required();
    layout->add_option("--report", o.report, "report JSON (computed when absent)");
    layout->add_option("--svg", o.svg, "SVG output");
    layout->add_option("--dot", o.dot, "DOT output");

    auto* synth = app.add_subcommand("synth", "synthetic troop, ledger and detection streams");

    auto* pipeline = app.add_subcommand("pipeline", "detections to matrix, report and drawing");
    pipeline->add_option("--detections", o.detections, "detection JSONL per video (id = file stem)");
    pipeline->add_option("--detections-dir", o.detections_dir, "directory of detection JSONL files");

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        emit_error(err, o.error_json, kUsage, "usage", e.what());
        if (!o.error_json) {
            err << app.help();
        }
        return kUsage;
    }

    try {
        if (track->parsed()) return cmd_track(o, out);
        if (eval_det->parsed()) return cmd_eval_det(o, out);
        if (eval_id->parsed()) return cmd_eval_id(o, out);
        if (cooccur->parsed()) return cmd_cooccur(o, out, err);
        if (network->parsed()) return cmd_network(o, out);
        if (layout->parsed()) return cmd_layout(o, out);
        if (synth->parsed()) return cmd_synth(o, out);
        if (pipeline->parsed()) return cmd_pipeline(o, out, err);
    } catch (const UsageError& e) {
        emit_error(err, o.error_json, kUsage, "usage", e.what());
        return kUsage;
    } catch (const ConfigError& e) {
        emit_error(err, o.error_json, kData, "config", e.what(), e.key());
        return kData;
    } catch (const ConvergenceError& e) {
        emit_error(err, o.error_json, kConvergence, "convergence", e.what());
        return kConvergence;
    } catch (const ParseError& e) {
        emit_error(err, o.error_json, kData, "parse", e.what());
        return kData;
    } catch (const Error& e) {
        emit_error(err, o.error_json, kData, "data", e.what());
        return kData;
    } catch (const std::filesystem::filesystem_error& e) {
        emit_error(err, o.error_json, kData, "io", e.what());
        return kData;
    }
    return kUsage;
}

}  // namespace socnet::cli
