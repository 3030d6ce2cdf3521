#include "socnet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "csv.hpp"
#include "socnet/error.hpp"

namespace socnet {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            if (start < text.size()) {
                lines.push_back(text.substr(start));
            }
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

bool blank(std::string_view line) {
    return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    if (s.empty()) {
        return out;
    }
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(std::string(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

double parse_number(const std::string& cell, const std::string& locus) {
    const std::string t = trim(cell);
    double v = 0.0;
    const auto* begin = t.data();
    const auto* end = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw ParseError(locus, "not a number: '" + t + "'");
    }
    return v;
}

const json& require(const json& obj, const char* key, const std::string& locus) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ParseError(locus, std::string("missing field '") + key + "'");
    }
    return obj.at(key);
}

double require_number(const json& v, const std::string& what, const std::string& locus) {
    if (!v.is_number()) {
        throw ParseError(locus, what + " must be a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
        throw ParseError(locus, what + " must be finite");
    }
    return d;
}

std::int64_t require_int(const json& v, const std::string& what, const std::string& locus) {
    if (!v.is_number_integer()) {
        throw ParseError(locus, what + " must be an integer");
    }
    return v.get<std::int64_t>();
}

double require_unit(const json& v, const std::string& what, const std::string& locus) {
    const double d = require_number(v, what, locus);
    if (d < 0.0 || d > 1.0) {
        throw ParseError(locus, what + " outside [0,1]: " + format_double(d));
    }
    return d;
}

BBox parse_bbox(const json& v, const std::string& locus) {
    if (!v.is_array() || v.size() != 4) {
        throw ParseError(locus, "bbox must be an array [x, y, w, h]");
    }
    BBox b{require_number(v[0], "bbox.x", locus), require_number(v[1], "bbox.y", locus),
           require_number(v[2], "bbox.w", locus), require_number(v[3], "bbox.h", locus)};
    if (!is_valid(b)) {
        throw ParseError(locus, "bbox has non-positive width or height");
    }
    return b;
}

ordered_json bbox_json(const BBox& b) { return ordered_json::array({b.x, b.y, b.w, b.h}); }

ClassScores parse_class_scores(const json& v, const Roster* roster, const std::string& locus) {
    if (!v.is_object()) {
        throw ParseError(locus, "class_scores must be an object");
    }
    ClassScores scores;
    for (const auto& [name, score] : v.items()) {
        if (roster && !roster->contains(name)) {
            throw ParseError(locus, "class_scores names unknown individual '" + name + "'");
        }
        scores[name] = require_unit(score, "class score for '" + name + "'", locus);
    }
    return scores;
}

ordered_json class_scores_json(const ClassScores& scores) {
    ordered_json out = ordered_json::object();
    for (const auto& [name, s] : scores) {
        out[name] = s;
    }
    return out;
}

json parse_json(std::string_view text, const std::string& locus) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(locus, std::string("malformed JSON: ") + e.what());
    }
}

void check_name_for_csv(const std::string& name, const char* forbidden) {
    if (name.find_first_of(forbidden) != std::string::npos) {
        throw ValidationError("name '" + name + "' contains a reserved separator character");
    }
}

const char* sex_name(Sex s) {
    switch (s) {
        case Sex::Female:
            return "female";
        case Sex::Male:
            return "male";
        case Sex::Unknown:
            break;
    }
    return "unknown";
}

}  // namespace

std::string format_double(double v) {
    if (v == 0.0) {
        return "0";
    }
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

// ---------------------------------------------------------------- roster

Roster parse_roster(std::string_view text) {
    Roster roster;
    const auto rows = csv::read(text);
    bool header_seen = false;
    for (const auto& row : rows) {
        const std::string locus = "roster line " + std::to_string(row.line);
        if (row.cells.size() == 1 && trim(row.cells[0]).empty()) {
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            if (row.cells.empty() || trim(row.cells[0]) != "name") {
                throw ParseError(locus, "expected header 'name,sex,age_years'");
            }
            continue;
        }
        if (row.cells.size() < 1 || row.cells.size() > 3) {
            throw ParseError(locus, "expected 1 to 3 fields");
        }
        Individual ind;
        ind.name = trim(row.cells[0]);
        if (ind.name.empty()) {
            throw ParseError(locus, "empty name");
        }
        if (row.cells.size() > 1) {
            const std::string sex = trim(row.cells[1]);
            if (sex == "female") {
                ind.sex = Sex::Female;
            } else if (sex == "male") {
                ind.sex = Sex::Male;
            } else if (sex == "unknown" || sex == "?" || sex.empty()) {
                ind.sex = Sex::Unknown;
            } else {
                throw ParseError(locus, "sex must be female, male or unknown");
            }
        }
        if (row.cells.size() > 2 && !trim(row.cells[2]).empty()) {
            const double age = parse_number(row.cells[2], locus);
            if (age < 0.0 || age != std::floor(age)) {
                throw ParseError(locus, "age_years must be a non-negative integer");
            }
            ind.age_years = static_cast<int>(age);
        }
        roster.individuals.push_back(std::move(ind));
    }
    try {
        roster.validate();
    } catch (const ValidationError& e) {
        throw ParseError("roster", e.what());
    }
    return roster;
}

std::string write_roster(const Roster& roster) {
    roster.validate();
    std::string out = "name,sex,age_years\n";
    for (const auto& ind : roster.individuals) {
        out += csv::join({ind.name, sex_name(ind.sex), ind.age_years ? std::to_string(*ind.age_years) : ""});
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------- COCO

GroundTruthSet parse_ground_truth(std::string_view json_text) {
    const json doc = parse_json(json_text, "ground truth");
    if (!doc.is_object()) {
        throw ParseError("ground truth", "top level must be an object");
    }
    GroundTruthSet gt;
    std::unordered_map<std::int64_t, std::size_t> image_pos;
    if (doc.contains("images")) {
        const auto& images = doc.at("images");
        if (!images.is_array()) {
            throw ParseError("images", "must be an array");
        }
        for (std::size_t i = 0; i < images.size(); ++i) {
            const auto& im = images[i];
            const std::string locus = "images[" + std::to_string(i) + "]";
            GtImage img;
            img.image_id = require_int(require(im, "id", locus), "id", locus);
            img.width = static_cast<int>(require_int(require(im, "width", locus), "width", locus));
            img.height = static_cast<int>(require_int(require(im, "height", locus), "height", locus));
            if (img.width <= 0 || img.height <= 0) {
                throw ParseError(locus, "width and height must be positive");
            }
            if (im.contains("file_name") && im.at("file_name").is_string()) {
                img.file_name = im.at("file_name").get<std::string>();
            }
            if (im.contains("video_id")) {
                const auto& v = im.at("video_id");
                img.video_id = v.is_string() ? v.get<std::string>() : v.dump();
            }
            img.frame_index = im.contains("frame_index") ? require_int(im.at("frame_index"), "frame_index", locus)
                                                          : img.image_id;
            if (!image_pos.emplace(img.image_id, gt.images.size()).second) {
                throw ParseError(locus, "duplicate image id " + std::to_string(img.image_id));
            }
            gt.images.push_back(std::move(img));
        }
    }
    std::unordered_map<std::int64_t, std::string> categories;
    if (doc.contains("categories")) {
        const auto& cats = doc.at("categories");
        for (std::size_t i = 0; i < cats.size(); ++i) {
            const std::string locus = "categories[" + std::to_string(i) + "]";
            const auto id = require_int(require(cats[i], "id", locus), "id", locus);
            const auto& name = require(cats[i], "name", locus);
            categories[id] = name.is_string() ? name.get<std::string>() : name.dump();
        }
    }
    if (doc.contains("annotations")) {
        const auto& anns = doc.at("annotations");
        if (!anns.is_array()) {
            throw ParseError("annotations", "must be an array");
        }
        for (std::size_t i = 0; i < anns.size(); ++i) {
            const auto& a = anns[i];
            std::string locus = "annotations[" + std::to_string(i) + "]";
            if (a.contains("id") && a.at("id").is_number_integer()) {
                locus += " (id " + std::to_string(a.at("id").get<std::int64_t>()) + ")";
            }
            GtAnnotation ann;
            ann.image_id = require_int(require(a, "image_id", locus), "image_id", locus);
            const auto it = image_pos.find(ann.image_id);
            if (it == image_pos.end()) {
                throw ParseError(locus, "references missing image_id " + std::to_string(ann.image_id));
            }
            ann.bbox = parse_bbox(require(a, "bbox", locus), locus);
            const auto& img = gt.images[it->second];
            if (ann.bbox.x < 0.0 || ann.bbox.y < 0.0 || ann.bbox.x + ann.bbox.w > img.width ||
                ann.bbox.y + ann.bbox.h > img.height) {
                throw ParseError(locus, "bbox lies outside its image bounds");
            }
            if (a.contains("category_id")) {
                const auto cat = require_int(a.at("category_id"), "category_id", locus);
                const auto c = categories.find(cat);
                ann.label = c != categories.end() ? c->second : std::to_string(cat);
            }
            gt.annotations.push_back(std::move(ann));
        }
    }
    return gt;
}

std::string write_ground_truth(const GroundTruthSet& gt) {
    ordered_json doc;
    doc["images"] = ordered_json::array();
    for (const auto& im : gt.images) {
        ordered_json j;
        j["id"] = im.image_id;
        j["file_name"] = im.file_name;
        j["width"] = im.width;
        j["height"] = im.height;
        j["video_id"] = im.video_id;
        j["frame_index"] = im.frame_index;
        doc["images"].push_back(std::move(j));
    }
    std::map<std::string, int> cat_ids;
    for (const auto& a : gt.annotations) {
        cat_ids.emplace(a.label, 0);
    }
    int next = 1;
    for (auto& [label, id] : cat_ids) {
        id = next++;
    }
    doc["annotations"] = ordered_json::array();
    std::int64_t ann_id = 1;
    for (const auto& a : gt.annotations) {
        ordered_json j;
        j["id"] = ann_id++;
        j["image_id"] = a.image_id;
        j["bbox"] = bbox_json(a.bbox);
        j["area"] = a.bbox.area();
        j["iscrowd"] = 0;
        j["category_id"] = cat_ids.at(a.label);
        doc["annotations"].push_back(std::move(j));
    }
    doc["categories"] = ordered_json::array();
    for (const auto& [label, id] : cat_ids) {
        doc["categories"].push_back(ordered_json{{"id", id}, {"name", label}});
    }
    return doc.dump(1) + "\n";
}

// ---------------------------------------------------------------- detections

DetectionStream parse_detection_stream(std::string_view jsonl, const std::string& video_id, const Roster* roster) {
    DetectionStream stream;
    stream.video_id = video_id;
    const auto lines = split_lines(jsonl);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        if (blank(lines[ln])) {
            continue;
        }
        const std::string locus = "line " + std::to_string(ln + 1);
        const json obj = parse_json(lines[ln], locus);
        Frame frame;
        frame.frame_index = require_int(require(obj, "frame_index", locus), "frame_index", locus);
        if (!stream.frames.empty() && frame.frame_index <= stream.frames.back().frame_index) {
            throw ParseError(locus, "frame_index " + std::to_string(frame.frame_index) +
                                        " does not increase (previous " +
                                        std::to_string(stream.frames.back().frame_index) + ")");
        }
        const auto& dets = require(obj, "detections", locus);
        if (!dets.is_array()) {
            throw ParseError(locus, "detections must be an array");
        }
        for (std::size_t d = 0; d < dets.size(); ++d) {
            const std::string dlocus = locus + " detection " + std::to_string(d);
            Detection det;
            det.bbox = parse_bbox(require(dets[d], "bbox", dlocus), dlocus);
            det.score = require_unit(require(dets[d], "score", dlocus), "score", dlocus);
            if (dets[d].contains("class_scores") && !dets[d].at("class_scores").is_null()) {
                det.class_scores = parse_class_scores(dets[d].at("class_scores"), roster, dlocus);
            }
            frame.detections.push_back(std::move(det));
        }
        stream.frames.push_back(std::move(frame));
    }
    return stream;
}

std::string write_detection_stream(const DetectionStream& stream) {
    std::string out;
    for (const auto& f : stream.frames) {
        ordered_json j;
        j["frame_index"] = f.frame_index;
        j["detections"] = ordered_json::array();
        for (const auto& d : f.detections) {
            ordered_json dj;
            dj["bbox"] = bbox_json(d.bbox);
            dj["score"] = d.score;
            if (d.class_scores) {
                dj["class_scores"] = class_scores_json(*d.class_scores);
            }
            j["detections"].push_back(std::move(dj));
        }
        out += j.dump();
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------- tracks

std::vector<Track> parse_tracks(std::string_view jsonl) {
    std::vector<Track> tracks;
    const auto lines = split_lines(jsonl);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        if (blank(lines[ln])) {
            continue;
        }
        const std::string locus = "line " + std::to_string(ln + 1);
        const json obj = parse_json(lines[ln], locus);
        Track t;
        t.track_id = require_int(require(obj, "track_id", locus), "track_id", locus);
        const auto& vid = require(obj, "video_id", locus);
        if (!vid.is_string()) {
            throw ParseError(locus, "video_id must be a string");
        }
        t.video_id = vid.get<std::string>();
        const auto& obs = require(obj, "observations", locus);
        if (!obs.is_array() || obs.empty()) {
            throw ParseError(locus, "observations must be a non-empty array");
        }
        for (const auto& o : obs) {
            Observation ob;
            ob.frame_index = require_int(require(o, "frame_index", locus), "frame_index", locus);
            if (!t.observations.empty() && ob.frame_index <= t.observations.back().frame_index) {
                throw ParseError(locus, "observation frame_index does not increase");
            }
            ob.bbox = parse_bbox(require(o, "bbox", locus), locus);
            ob.score = require_unit(require(o, "score", locus), "score", locus);
            if (o.contains("class_scores") && !o.at("class_scores").is_null()) {
                ob.class_scores = parse_class_scores(o.at("class_scores"), nullptr, locus);
            }
            t.observations.push_back(std::move(ob));
        }
        if (obj.contains("identity") && !obj.at("identity").is_null()) {
            const auto& id = obj.at("identity");
            const auto& name = require(id, "name", locus);
            if (!name.is_string()) {
                throw ParseError(locus, "identity.name must be a string");
            }
            t.identity = Identity{name.get<std::string>(),
                                  require_unit(require(id, "confidence", locus), "identity.confidence", locus)};
        }
        tracks.push_back(std::move(t));
    }
    return tracks;
}

std::string write_tracks(const std::vector<Track>& tracks) {
    std::string out;
    for (const auto& t : tracks) {
        ordered_json j;
        j["track_id"] = t.track_id;
        j["video_id"] = t.video_id;
        j["observations"] = ordered_json::array();
        for (const auto& o : t.observations) {
            ordered_json oj;
            oj["frame_index"] = o.frame_index;
            oj["bbox"] = bbox_json(o.bbox);
            oj["score"] = o.score;
            if (o.class_scores) {
                oj["class_scores"] = class_scores_json(*o.class_scores);
            }
            j["observations"].push_back(std::move(oj));
        }
        if (t.identity) {
            j["identity"] = ordered_json{{"name", t.identity->name}, {"confidence", t.identity->confidence}};
        }
        out += j.dump();
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------- ledger

OccurrenceLedger parse_occurrence_ledger(std::string_view text) {
    OccurrenceLedger ledger;
    const auto rows = csv::read(text);
    bool header_seen = false;
    std::unordered_set<std::string> ids;
    for (const auto& row : rows) {
        const std::string locus = "ledger line " + std::to_string(row.line);
        if (row.cells.size() == 1 && trim(row.cells[0]).empty()) {
            continue;
        }
        if (!header_seen) {
            header_seen = true;
            if (row.cells.size() == 2 && row.cells[0] == "video_id" && row.cells[1] == "present") {
                ledger.pairwise = false;
            } else if (row.cells.size() == 3 && row.cells[0] == "video_id" && row.cells[1] == "present" &&
                       row.cells[2] == "pairs") {
                ledger.pairwise = true;
            } else {
                throw ParseError(locus, "expected header 'video_id,present' or 'video_id,present,pairs'");
            }
            continue;
        }
        const std::size_t expected = ledger.pairwise ? 3 : 2;
        if (row.cells.size() != expected) {
            throw ParseError(locus, "expected " + std::to_string(expected) + " fields");
        }
        LedgerEntry e;
        e.video_id = row.cells[0];
        if (e.video_id.empty()) {
            throw ParseError(locus, "empty video_id");
        }
        if (!ids.insert(e.video_id).second) {
            throw ParseError(locus, "duplicate video_id '" + e.video_id + "'");
        }
        for (const auto& name : split(row.cells[1], ',')) {
            if (name.empty()) {
                throw ParseError(locus, "empty name in present list");
            }
            e.present.insert(name);
        }
        if (ledger.pairwise) {
            for (const auto& item : split(row.cells[2], ',')) {
                const auto bar = item.find('|');
                if (bar == std::string::npos || item.find('|', bar + 1) != std::string::npos) {
                    throw ParseError(locus, "pair '" + item + "' must be written A|B");
                }
                const std::string a = item.substr(0, bar);
                const std::string b = item.substr(bar + 1);
                if (a.empty() || b.empty() || a == b) {
                    throw ParseError(locus, "pair '" + item + "' needs two distinct names");
                }
                if (!e.present.contains(a) || !e.present.contains(b)) {
                    throw ParseError(locus, "pair '" + item + "' names an individual not listed as present");
                }
                e.pairs.insert(make_pair_key(a, b));
            }
        }
        ledger.entries.push_back(std::move(e));
    }
    if (!header_seen) {
        throw ParseError("ledger", "missing header");
    }
    return ledger;
}

std::string write_ledger(const OccurrenceLedger& ledger, const Roster* roster) {
    ledger.validate(roster);
    auto rank = [&](const std::string& name) -> std::size_t {
        if (roster) {
            return *roster->index_of(name);
        }
        return 0;
    };
    auto ordered = [&](const std::set<std::string>& names) {
        std::vector<std::string> v(names.begin(), names.end());
        if (roster) {
            std::stable_sort(v.begin(), v.end(),
                             [&](const std::string& a, const std::string& b) { return rank(a) < rank(b); });
        }
        return v;
    };
    std::string out = ledger.pairwise ? "video_id,present,pairs\n" : "video_id,present\n";
    for (const auto& e : ledger.entries) {
        std::string present;
        for (const auto& name : ordered(e.present)) {
            check_name_for_csv(name, ",|\n\r\"");
            if (!present.empty()) {
                present += ',';
            }
            present += name;
        }
        std::vector<std::string> fields{e.video_id, present};
        if (ledger.pairwise) {
            std::vector<NamePair> pairs(e.pairs.begin(), e.pairs.end());
            if (roster) {
                for (auto& p : pairs) {
                    if (rank(p.second) < rank(p.first)) {
                        std::swap(p.first, p.second);
                    }
                }
                std::sort(pairs.begin(), pairs.end(), [&](const NamePair& a, const NamePair& b) {
                    return std::pair(rank(a.first), rank(a.second)) < std::pair(rank(b.first), rank(b.second));
                });
            }
            std::string joined;
            for (const auto& [a, b] : pairs) {
                if (!joined.empty()) {
                    joined += ',';
                }
                joined += a + "|" + b;
            }
            fields.push_back(joined);
        }
        out += csv::join(fields);
        out += '\n';
    }
    return out;
}

// ---------------------------------------------------------------- matrix

AssociationMatrix parse_association_matrix(std::string_view text) {
    const auto first_nl = text.find('\n');
    const std::string_view header_line = text.substr(0, first_nl);
    const char delim = header_line.find(',') == std::string_view::npos && header_line.find('\t') != std::string_view::npos
                           ? '\t'
                           : ',';
    auto rows = csv::read(text, delim);
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const csv::Row& r) {
                                  return std::all_of(r.cells.begin(), r.cells.end(),
                                                     [](const std::string& c) { return trim(c).empty(); });
                              }),
               rows.end());
    if (rows.empty()) {
        throw ParseError("matrix", "missing header row");
    }
    std::vector<std::string> names;
    for (std::size_t c = 1; c < rows[0].cells.size(); ++c) {
        names.push_back(trim(rows[0].cells[c]));
    }
    while (!names.empty() && names.back().empty()) {
        names.pop_back();
    }
    const std::size_t n = names.size();
    std::unordered_map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < n; ++i) {
        const std::string locus = "matrix header column " + std::to_string(i + 2);
        if (names[i].empty()) {
            throw ParseError(locus, "empty name");
        }
        if (!col.emplace(names[i], i).second) {
            throw ParseError(locus, "duplicate name '" + names[i] + "'");
        }
    }
    std::vector<double> raw(n * n, 0.0);
    std::vector<bool> row_seen(n, false);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        const std::string locus = "matrix line " + std::to_string(row.line);
        const std::string name = trim(row.cells[0]);
        const auto it = col.find(name);
        if (it == col.end()) {
            throw ParseError(locus, "row name '" + name + "' is not in the header");
        }
        const std::size_t i = it->second;
        if (row_seen[i]) {
            throw ParseError(locus, "duplicate row '" + name + "'");
        }
        row_seen[i] = true;
        for (std::size_t c = 1; c < row.cells.size(); ++c) {
            const std::string cell = trim(row.cells[c]);
            if (cell.empty()) {
                continue;
            }
            if (c > n) {
                throw ParseError(locus, "more values than header names");
            }
            const double v = parse_number(cell, locus + " column " + std::to_string(c + 1));
            if (v < 0.0 || v > 1.0) {
                throw ParseError(locus + " column " + std::to_string(c + 1),
                                 "association index outside [0,1]: " + cell);
            }
            const std::size_t j = c - 1;
            if (i == j && v != 0.0) {
                throw ParseError(locus, "nonzero diagonal entry for '" + name + "'");
            }
            raw[i * n + j] = v;
        }
    }
    AssociationMatrix m(names);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double upper = raw[i * n + j];
            const double lower = raw[j * n + i];
            if (upper != 0.0 && lower != 0.0 && std::abs(upper - lower) > 1e-9) {
                throw ParseError("matrix cell (" + names[i] + ", " + names[j] + ")",
                                 "conflicting mirror entries " + format_double(upper) + " and " +
                                     format_double(lower));
            }
            m.set(i, j, std::max(upper, lower));
        }
    }
    m.validate();
    return m;
}

std::string write_matrix(const AssociationMatrix& m) {
    m.validate();
    std::vector<std::string> header{""};
    header.insert(header.end(), m.names().begin(), m.names().end());
    std::string out = csv::join(header) + "\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::vector<std::string> row{m.names()[i]};
        for (std::size_t j = 0; j < m.size(); ++j) {
            row.push_back(format_double(m(i, j)));
        }
        out += csv::join(row) + "\n";
    }
    return out;
}

// ---------------------------------------------------------------- report

NetworkReport parse_report(std::string_view json_text) {
    const json doc = parse_json(json_text, "report");
    NetworkReport r;
    r.density = require_number(require(doc, "density", "report"), "density", "report");
    r.global_efficiency_binary =
        require_number(require(doc, "global_efficiency_binary", "report"), "global_efficiency_binary", "report");
    r.global_efficiency_weighted = require_number(require(doc, "global_efficiency_weighted", "report"),
                                                  "global_efficiency_weighted", "report");
    const auto& inds = require(doc, "individuals", "report");
    if (!inds.is_array()) {
        throw ParseError("report", "individuals must be an array");
    }
    for (std::size_t i = 0; i < inds.size(); ++i) {
        const std::string locus = "report individuals[" + std::to_string(i) + "]";
        NodeMeasures nm;
        const auto& name = require(inds[i], "name", locus);
        if (!name.is_string()) {
            throw ParseError(locus, "name must be a string");
        }
        nm.name = name.get<std::string>();
        nm.degree = static_cast<int>(require_int(require(inds[i], "degree", locus), "degree", locus));
        nm.strength = require_number(require(inds[i], "strength", locus), "strength", locus);
        nm.eigenvector = require_number(require(inds[i], "eigenvector", locus), "eigenvector", locus);
        r.individuals.push_back(std::move(nm));
    }
    if (doc.contains("warnings")) {
        for (const auto& w : doc.at("warnings")) {
            r.warnings.push_back(w.is_string() ? w.get<std::string>() : w.dump());
        }
    }
    return r;
}

std::string write_report(const NetworkReport& report) {
    ordered_json doc;
    doc["density"] = report.density;
    doc["global_efficiency_binary"] = report.global_efficiency_binary;
    doc["global_efficiency_weighted"] = report.global_efficiency_weighted;
    doc["individuals"] = ordered_json::array();
    for (const auto& nm : report.individuals) {
        ordered_json j;
        j["name"] = nm.name;
        j["degree"] = nm.degree;
        j["strength"] = nm.strength;
        j["eigenvector"] = nm.eigenvector;
        doc["individuals"].push_back(std::move(j));
    }
    if (!report.warnings.empty()) {
        doc["warnings"] = report.warnings;
    }
    return doc.dump(2) + "\n";
}

std::string write_counts(const OccurrenceCounts& counts, const std::vector<std::string>& order) {
    ordered_json doc;
    doc["total_dyadic_cooccurrences"] = counts.total_dyadic;
    doc["individuals"] = ordered_json::object();
    for (const auto& name : order) {
        doc["individuals"][name] = counts.individual(name);
    }
    doc["pairs"] = ordered_json::array();
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            const auto x = counts.pair(order[i], order[j]);
            if (x > 0) {
                doc["pairs"].push_back(ordered_json::array({order[i], order[j], x}));
            }
        }
    }
    doc["unobserved_dyads"] = ordered_json::array();
    for (const auto& [a, b] : unobserved_dyads(counts, order)) {
        doc["unobserved_dyads"].push_back(ordered_json::array({a, b}));
    }
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------- id samples / metrics

std::vector<IdSample> parse_id_samples(std::string_view jsonl) {
    std::vector<IdSample> samples;
    const auto lines = split_lines(jsonl);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        if (blank(lines[ln])) {
            continue;
        }
        const std::string locus = "line " + std::to_string(ln + 1);
        const json obj = parse_json(lines[ln], locus);
        IdSample s;
        const auto& label = require(obj, "true_label", locus);
        if (!label.is_string()) {
            throw ParseError(locus, "true_label must be a string");
        }
        s.true_label = label.get<std::string>();
        s.class_scores = parse_class_scores(require(obj, "class_scores", locus), nullptr, locus);
        if (s.class_scores.empty()) {
            throw ParseError(locus, "class_scores must not be empty");
        }
        samples.push_back(std::move(s));
    }
    return samples;
}

std::string write_id_samples(const std::vector<IdSample>& samples) {
    std::string out;
    for (const auto& s : samples) {
        ordered_json j;
        j["true_label"] = s.true_label;
        j["class_scores"] = class_scores_json(s.class_scores);
        out += j.dump() + "\n";
    }
    return out;
}

std::string write_detection_metrics(const DetectionMetrics& m) {
    ordered_json doc;
    doc["iou_threshold"] = m.iou_threshold;
    doc["score_threshold"] = m.score_threshold;
    doc["ap_method"] = m.ap_method;
    doc["average_precision"] = m.average_precision;
    doc["false_negative_rate"] = m.false_negative_rate;
    doc["predictions"] = m.predictions;
    doc["ground_truths"] = m.ground_truths;
    doc["pr_curve"] = ordered_json::array();
    for (const auto& p : m.curve) {
        doc["pr_curve"].push_back(
            ordered_json{{"recall", p.recall}, {"precision", p.precision}, {"score_threshold", p.score_threshold}});
    }
    return doc.dump(2) + "\n";
}

std::string write_identification_metrics(const IdentificationMetrics& m) {
    ordered_json doc;
    doc["samples"] = m.samples;
    doc["topk"] = ordered_json::object();
    for (const auto& [k, acc] : m.topk) {
        doc["topk"][std::to_string(k)] = acc;
    }
    doc["confusion"] = ordered_json::object();
    doc["confusion"]["normalized"] = m.normalized;
    doc["confusion"]["names"] = m.confusion.names;
    doc["confusion"]["row_counts"] = m.confusion.row_counts;
    doc["confusion"]["rows"] = ordered_json::array();
    const std::size_t n = m.confusion.names.size();
    for (std::size_t i = 0; i < n; ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < n; ++j) {
            row.push_back(m.confusion(i, j));
        }
        doc["confusion"]["rows"].push_back(std::move(row));
    }
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------- files

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open '" + path + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file_atomic(const std::string& path, std::string_view contents) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) {
        fs::create_directories(target.parent_path());
    }
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw InputError("cannot open '" + tmp.string() + "' for writing");
        }
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        out.flush();
        if (!out) {
            throw InputError("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw InputError("cannot rename onto '" + path + "': " + ec.message());
    }
}

}  // namespace socnet
