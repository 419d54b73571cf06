#include "fusereid/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fusereid/errors.hpp"

namespace fusereid {

using nlohmann::json;

namespace {

json points_to_json(const std::vector<TrajectoryPoint>& points) {
    json arr = json::array();
    for (const auto& p : points) {
        arr.push_back(json::array({p.time.millis, p.pos.x, p.pos.y}));
    }
    return arr;
}

std::vector<TrajectoryPoint> points_from_json(const json& arr) {
    std::vector<TrajectoryPoint> points;
    points.reserve(arr.size());
    for (const auto& p : arr) {
        if (!p.is_array() || p.size() != 3) {
            throw IoError("trajectory point must be [millis, x, y]");
        }
        points.push_back({Timestamp{p[0].get<std::int64_t>()},
                          {p[1].get<double>(), p[2].get<double>()}});
    }
    return points;
}

}  // namespace

std::string scenario_to_json(const Scenario& scenario) {
    json doc;
    doc["embedding_dim"] = scenario.embedding_dim;

    json sequences = json::array();
    for (const auto& seq : scenario.sequences) {
        json s;
        s["id"] = seq.id;
        s["camera"] = seq.camera;
        s["identity"] = seq.identity;
        s["embedding"] = seq.embedding;
        s["trajectory"] = points_to_json(seq.trajectory.points);
        sequences.push_back(std::move(s));
    }
    doc["sequences"] = std::move(sequences);

    json signals = json::array();
    for (const auto& sig : scenario.signals) {
        json s;
        s["id"] = sig.id;
        s["identity"] = sig.identity;
        s["points"] = points_to_json(sig.points);
        signals.push_back(std::move(s));
    }
    doc["signals"] = std::move(signals);
    doc["queries"] = scenario.queries;

    return doc.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("scenario JSON parse error: ") + e.what());
    }
    try {
        Scenario scenario;
        scenario.embedding_dim = doc.at("embedding_dim").get<int>();
        for (const auto& s : doc.at("sequences")) {
            VideoSequence seq;
            seq.id = s.at("id").get<std::string>();
            seq.camera = s.at("camera").get<std::string>();
            seq.identity = s.value("identity", std::string{});
            seq.embedding = s.at("embedding").get<std::vector<double>>();
            seq.trajectory.points = points_from_json(s.at("trajectory"));
            scenario.sequences.push_back(std::move(seq));
        }
        for (const auto& s : doc.at("signals")) {
            WirelessTrajectory sig;
            sig.id = s.at("id").get<std::string>();
            sig.identity = s.value("identity", std::string{});
            sig.points = points_from_json(s.at("points"));
            scenario.signals.push_back(std::move(sig));
        }
        scenario.queries = doc.at("queries").get<std::vector<std::string>>();
        return scenario;
    } catch (const json::exception& e) {
        throw IoError(std::string("scenario JSON structure error: ") + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("write failed for " + path);
}

Scenario load_scenario(const std::string& path) {
    return scenario_from_json(read_file(path));
}

void save_scenario(const Scenario& scenario, const std::string& path) {
    write_file(path, scenario_to_json(scenario));
}

}  // namespace fusereid
