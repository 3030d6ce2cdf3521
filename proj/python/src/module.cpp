#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "socnet/config.hpp"
#include "socnet/ingest.hpp"
#include "socnet/pipeline.hpp"

namespace py = pybind11;
using namespace socnet;

// Text in, text out: every argument and result uses the same wire formats as
// the command-line tool, so Python callers can mix the two freely.

namespace {

BBox box(const std::vector<double>& v) {
    if (v.size() != 4) {
        throw InputError("a box is [x, y, w, h]");
    }
    return {v[0], v[1], v[2], v[3]};
}

std::optional<Roster> roster_of(const std::optional<std::string>& text) {
    return text ? std::optional<Roster>(parse_roster(*text)) : std::nullopt;
}

PipelineConfig config_of(const std::string& text) {
    auto c = parse_config(text);
    c.validate();
    return c;
}

APMethod ap_method(const std::string& name) {
    if (name == "interp101") {
        return APMethod::Interpolated101;
    }
    if (name == "exact") {
        return APMethod::Exact;
    }
    throw InputError("method must be interp101 or exact");
}

}  // namespace

PYBIND11_MODULE(_socnet, m) {
    m.doc() = "Association networks from detection streams";

    static py::exception<ConvergenceError> convergence(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const ConvergenceError& e) {
            convergence(e.what());
        } catch (const Error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("iou", [](const std::vector<double>& a, const std::vector<double>& b) { return iou(box(a), box(b)); },
          py::arg("a"), py::arg("b"));

    m.def(
        "average_precision",
        [](const std::vector<std::vector<double>>& preds, const std::vector<std::vector<double>>& gts,
           double iou_threshold, const std::string& method) {
            std::vector<ScoredBox> p;
            for (const auto& v : preds) {
                if (v.size() != 5) {
                    throw InputError("a prediction is [x, y, w, h, score]");
                }
                p.push_back({box({v[0], v[1], v[2], v[3]}), v[4]});
            }
            std::vector<BBox> g;
            for (const auto& v : gts) {
                g.push_back(box(v));
            }
            return average_precision(p, g, iou_threshold, ap_method(method));
        },
        py::arg("preds"), py::arg("gts"), py::arg("iou_threshold") = 0.5, py::arg("method") = "interp101");

    m.def(
        "topk_accuracy",
        [](const std::string& samples_jsonl, int k) { return topk_accuracy(parse_id_samples(samples_jsonl), k); },
        py::arg("samples_jsonl"), py::arg("k"));

    m.def(
        "track",
        [](const std::string& detections_jsonl, const std::string& video_id, const std::optional<std::string>& roster,
           const std::string& config) {
            const auto c = config_of(config);
            const auto stream = parse_detection_stream(detections_jsonl, video_id);
            const auto r = roster ? parse_roster(*roster) : roster_from_streams({stream});
            return write_tracks(track_video(stream, r, c.tracker));
        },
        py::arg("detections_jsonl"), py::arg("video_id"), py::arg("roster") = py::none(), py::arg("config") = "");

    m.def(
        "association_matrix",
        [](const std::string& ledger_csv, const std::optional<std::string>& roster) {
            const auto r = roster_of(roster);
            return write_matrix(associate(parse_occurrence_ledger(ledger_csv), r ? &*r : nullptr).matrix);
        },
        py::arg("ledger_csv"), py::arg("roster") = py::none());

    m.def(
        "network_report",
        [](const std::string& matrix_csv, const std::string& config) {
            return write_report(analyse(parse_association_matrix(matrix_csv), config_of(config)));
        },
        py::arg("matrix_csv"), py::arg("config") = "");

    m.def(
        "layout",
        [](const std::string& matrix_csv, std::uint64_t seed, const std::string& config) {
            const auto c = config_of(config);
            const auto mat = parse_association_matrix(matrix_csv);
            const auto r = render(mat, analyse(mat, c), c.gem, seed);
            return py::dict(py::arg("svg") = r.svg, py::arg("dot") = r.dot);
        },
        py::arg("matrix_csv"), py::arg("seed"), py::arg("config") = "");

    m.def(
        "synth",
        [](std::uint64_t seed, const std::string& config) {
            auto c = config_of(config);
            c.synth.seed = seed;
            const auto g = generate_scenario(c.synth);
            const auto& sc = g.scenario;
            py::dict detections;
            for (const auto& s : g.streams) {
                detections[py::str(s.video_id)] = write_detection_stream(s);
            }
            return py::dict(py::arg("roster") = write_roster(sc.roster),
                            py::arg("latent_matrix") = write_matrix(sc.latent_weights),
                            py::arg("ledger") = write_ledger(sc.ground_truth_ledger, &sc.roster),
                            py::arg("oracle_matrix") = write_matrix(associate(sc.ground_truth_ledger, &sc.roster).matrix),
                            py::arg("detections") = detections);
        },
        py::arg("seed"), py::arg("config") = "");

    m.def(
        "pipeline",
        [](const std::vector<std::pair<std::string, std::string>>& detections, std::uint64_t seed,
           const std::optional<std::string>& roster, const std::string& config) {
            const auto c = config_of(config);
            const auto r = roster_of(roster);
            std::vector<DetectionStream> streams;
            for (const auto& [vid, text] : detections) {
                streams.push_back(parse_detection_stream(text, vid, r ? &*r : nullptr));
            }
            PipelineResult res;
            {
                py::gil_scoped_release release;
                res = run_pipeline(streams, r ? &*r : nullptr, c, seed);
            }
            return py::dict(py::arg("matrix") = write_matrix(res.association.matrix),
                            py::arg("ledger") = write_ledger(res.association.ledger),
                            py::arg("report") = write_report(res.report), py::arg("svg") = res.rendering.svg,
                            py::arg("dot") = res.rendering.dot);
        },
        py::arg("detections"), py::arg("seed"), py::arg("roster") = py::none(), py::arg("config") = "");
}
