#pragma once

// Local HTTP + JSON facade over the engine, and the file-backed session
// store. Handlers are plain member functions returning status and body so
// they can be exercised without a socket.
//
//   GET  /api/graph
//   GET  /api/automorphisms/options
//   POST /api/automorphisms/resolve   {n, sigma, g}
//   POST /api/transform               {progression, automorphisms}
//   POST /api/sessions
//   GET  /api/sessions/{id}
//   PUT  /api/sessions/{id}

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>

#include "cubedance/graph.hpp"
#include "cubedance/progression.hpp"
#include "httplib.h"
#include "json.hpp"

namespace cubedance {

using Json = nlohmann::ordered_json;

struct HttpResponse {
  int status = 200;
  std::string body;
};

inline std::string json_body(const Json& j) { return j.dump(2) + "\n"; }

inline HttpResponse error_response(int status, const std::string& code, const std::string& message,
                                   Json extra = Json::object()) {
  Json err = {{"code", code}, {"message", message}};
  for (auto& [k, v] : extra.items()) err[k] = v;
  return {status, json_body({{"error", err}})};
}

inline Json automorphism_json(const AutomorphismGroup& group, const ActionAutomorphism& a) {
  const Monoid& m = group.monoid();
  const auto params = a.params ? a.params : derive_parameters(m, a.n, a.nu);
  Json nu = Json::array();
  Json mapping = Json::object();
  for (Chord c : enumerate_all()) {
    nu.push_back(a.nu[c.index()]);
    mapping[format_chord(c)] = format_chord(a(c));
  }
  Json out = {{"encoding", group.encode(a)}};
  if (params) {
    Json g = Json::array();
    for (auto v : params->offsets.g) g.push_back(v);
    out["params"] = {{"n",
                      {{"U", m.word(a.n.image(Generator::kU))},
                       {"P", m.word(a.n.image(Generator::kP))},
                       {"L", m.word(a.n.image(Generator::kL))}}},
                     {"sigma", params->sigma.to_cycle_notation()},
                     {"g", g}};
  }
  out["nu"] = nu;
  out["mapping"] = mapping;
  return out;
}

class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
  }

  const std::filesystem::path& directory() const { return dir_; }

  static bool valid_id(const std::string& id) {
    if (id.size() != 32) return false;
    for (char c : id) {
      if (!std::isxdigit(static_cast<unsigned char>(c)) || std::isupper(static_cast<unsigned char>(c))) {
        return false;
      }
    }
    return true;
  }

  Json create(Json fields) {
    const std::string id = new_id();
    const std::string now = timestamp();
    fields["id"] = id;
    fields["created"] = now;
    fields["modified"] = now;
    Json ordered = order_fields(fields);
    auto lock = lock_session(id);
    write(id, ordered);
    return ordered;
  }

  std::optional<Json> get(const std::string& id) {
    if (!valid_id(id)) return std::nullopt;
    auto lock = lock_session(id);
    return read(id);
  }

  // Replaces the given fields of an existing session.
  std::optional<Json> update(const std::string& id, const Json& fields) {
    if (!valid_id(id)) return std::nullopt;
    auto lock = lock_session(id);
    auto current = read(id);
    if (!current) return std::nullopt;
    for (const char* key : {"progression", "automorphisms"}) {
      if (fields.contains(key)) (*current)[key] = fields[key];
    }
    (*current)["modified"] = timestamp();
    Json ordered = order_fields(*current);
    write(id, ordered);
    return ordered;
  }

 private:
  static Json order_fields(const Json& j) {
    Json out = Json::object();
    for (const char* key : {"id", "progression", "automorphisms", "created", "modified"}) {
      out[key] = j.contains(key) ? j[key] : Json();
    }
    return out;
  }

  std::unique_lock<std::mutex> lock_session(const std::string& id) {
    std::shared_ptr<std::mutex> m;
    {
      std::lock_guard<std::mutex> guard(table_mutex_);
      auto& slot = session_mutexes_[id];
      if (!slot) slot = std::make_shared<std::mutex>();
      m = slot;
    }
    // Entries are never erased, so the mutex outlives the returned lock.
    return std::unique_lock<std::mutex>(*m);
  }

  std::filesystem::path path_of(const std::string& id) const { return dir_ / (id + ".json"); }

  std::optional<Json> read(const std::string& id) const {
    std::ifstream in(path_of(id));
    if (!in) return std::nullopt;
    try {
      return Json::parse(in);
    } catch (const Json::parse_error&) {
      return std::nullopt;
    }
  }

  // Write to a temporary file, then rename over the target.
  void write(const std::string& id, const Json& j) const {
    const auto target = path_of(id);
    auto tmp = target;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::trunc);
      out << j.dump(2) << "\n";
      if (!out) throw std::runtime_error("failed to write session " + id);
    }
    std::filesystem::rename(tmp, target);
  }

  std::string new_id() {
    std::lock_guard<std::mutex> guard(table_mutex_);
    static constexpr char hex[] = "0123456789abcdef";
    std::string id;
    do {
      id.clear();
      for (int w = 0; w < 2; ++w) {
        std::uint64_t bits = rng_();
        for (int k = 0; k < 16; ++k, bits >>= 4) id += hex[bits & 0xf];
      }
    } while (std::filesystem::exists(path_of(id)));
    return id;
  }

  static std::string timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
  }

  std::filesystem::path dir_;
  std::mutex table_mutex_;
  std::unordered_map<std::string, std::shared_ptr<std::mutex>> session_mutexes_;
  std::mt19937_64 rng_{std::random_device{}()};
};

class Service {
 public:
  Service(const AutomorphismGroup& group, std::filesystem::path state_dir)
      : group_(group), sessions_(std::move(state_dir)) {}

  HttpResponse graph() const {
    Json j = graph_json(group_.monoid().generators());
    Json quadrants = Json::array();
    for (Quadrant q : kQuadrants) {
      Json members = Json::array();
      for (Chord c : enumerate_all()) {
        if (quadrant(c) == q) members.push_back(format_chord(c));
      }
      quadrants.push_back({{"name", std::string(1, quadrant_letter(q))}, {"chords", members}});
    }
    j["quadrants"] = quadrants;
    return {200, json_body(j)};
  }

  HttpResponse options() const {
    const Monoid& m = group_.monoid();
    Json ns = Json::array();
    for (std::size_t i = 0; i < group_.monoid_automorphisms().size(); ++i) {
      const auto& n = group_.monoid_automorphisms()[i];
      ns.push_back({{"index", i},
                    {"images",
                     {{"U", m.word(n.image(Generator::kU))},
                      {"P", m.word(n.image(Generator::kP))},
                      {"L", m.word(n.image(Generator::kL))}}},
                    {"code", encode_generator_images(m, n)}});
    }
    Json sigmas = Json::array();
    for (const auto& s : AugPermutation::cycle_symmetries()) {
      Json images = Json::array();
      for (Quadrant q : kQuadrants) images.push_back(std::string(1, quadrant_letter(s(q))) + "aug");
      sigmas.push_back({{"cycle", s.to_cycle_notation()},
                        {"images", images},
                        {"kind", s.is_rotation() ? "rotation" : "reflection"}});
    }
    Json g = {{"values", {0, 1, 2}},
              {"representatives", {"C", "G", "D", "F"}},
              {"step_semitones", 4}};
    return {200, json_body({{"n", ns}, {"sigma", sigmas}, {"g", g}})};
  }

  HttpResponse resolve(const std::string& body) const {
    Json req;
    if (auto err = parse_body(body, req)) return *err;
    const Monoid& m = group_.monoid();
    MonoidAutomorphism n;
    try {
      n = parse_n(req.value("n", Json()));
    } catch (const std::exception& e) {
      return error_response(400, "invalid_n", e.what());
    }
    const Json& sj = req.contains("sigma") ? req["sigma"] : Json();
    std::optional<AugPermutation> sigma;
    if (sj.is_string()) {
      sigma = AugPermutation::from_cycle_notation(sj.get<std::string>());
    } else if (sj.is_array() && sj.size() == 4) {
      sigma = sigma_from_images(sj);
    }
    if (!sigma) return error_response(400, "invalid_sigma", "sigma must be cycle notation or four augmented chords");
    const Json& gj = req.contains("g") ? req["g"] : Json();
    TripleOffsets offsets;
    if (!gj.is_array() || gj.size() != 4) {
      return error_response(400, "invalid_g", "g must be a list of four offsets");
    }
    for (std::size_t i = 0; i < 4; ++i) {
      if (!gj[i].is_number_integer() || gj[i].get<int>() < 0 || gj[i].get<int>() > 2) {
        return error_response(400, "invalid_g", "offsets must lie in {0, 1, 2}");
      }
      offsets.g[i] = static_cast<std::uint8_t>(gj[i].get<int>());
    }
    auto built = build_candidate(m, n, *sigma, offsets);
    if (auto* rejection = std::get_if<Rejection>(&built)) {
      return error_response(400, "rejected", rejection->reason,
                            {{"kind", rejection_kind_name(rejection->kind)}});
    }
    return {200, json_body(automorphism_json(group_, std::get<ActionAutomorphism>(built)))};
  }

  HttpResponse transform(const std::string& body) const {
    Json req;
    if (auto err = parse_body(body, req)) return *err;
    Progression p;
    try {
      p = progression_from_json(req.value("progression", Json()));
    } catch (const ProgressionParseError& e) {
      return error_response(400, "invalid_progression", e.what(), {{"token", e.token()}});
    }
    std::vector<std::string> specs;
    if (auto err = read_specs(req, specs)) return *err;
    try {
      return {200, json_body(chain_json(p, specs, group_))};
    } catch (const ChainError& e) {
      return error_response(400, "invalid_automorphism", e.what(), {{"index", e.index()}});
    }
  }

  HttpResponse create_session(const std::string& body) {
    Json req = Json::object();
    if (!body.empty()) {
      if (auto err = parse_body(body, req)) return *err;
    }
    Json fields;
    if (auto err = session_fields(req, fields, true)) return *err;
    return {200, json_body(sessions_.create(fields))};
  }

  HttpResponse get_session(const std::string& id) {
    auto s = sessions_.get(id);
    if (!s) return error_response(404, "not_found", "no session " + id);
    return {200, json_body(*s)};
  }

  HttpResponse put_session(const std::string& id, const std::string& body) {
    Json req;
    if (auto err = parse_body(body, req)) return *err;
    Json fields;
    if (auto err = session_fields(req, fields, false)) return *err;
    auto s = sessions_.update(id, fields);
    if (!s) return error_response(404, "not_found", "no session " + id);
    return {200, json_body(*s)};
  }

  void mount(httplib::Server& server) {
    auto send = [](httplib::Response& res, const HttpResponse& r) {
      res.status = r.status;
      res.set_content(r.body, "application/json");
    };
    server.Get("/api/graph", [this, send](const httplib::Request&, httplib::Response& res) {
      send(res, graph());
    });
    server.Get("/api/automorphisms/options",
               [this, send](const httplib::Request&, httplib::Response& res) { send(res, options()); });
    server.Post("/api/automorphisms/resolve",
                [this, send](const httplib::Request& req, httplib::Response& res) {
                  send(res, resolve(req.body));
                });
    server.Post("/api/transform", [this, send](const httplib::Request& req, httplib::Response& res) {
      send(res, transform(req.body));
    });
    server.Post("/api/sessions", [this, send](const httplib::Request& req, httplib::Response& res) {
      send(res, create_session(req.body));
    });
    server.Get(R"(/api/sessions/([^/]+))",
               [this, send](const httplib::Request& req, httplib::Response& res) {
                 send(res, get_session(req.matches[1]));
               });
    server.Put(R"(/api/sessions/([^/]+))",
               [this, send](const httplib::Request& req, httplib::Response& res) {
                 send(res, put_session(req.matches[1], req.body));
               });
  }

  const AutomorphismGroup& group() const { return group_; }
  SessionStore& sessions() { return sessions_; }

 private:
  static std::optional<HttpResponse> parse_body(const std::string& body, Json& out) {
    try {
      out = Json::parse(body);
    } catch (const Json::parse_error& e) {
      return error_response(400, "invalid_json", e.what());
    }
    if (!out.is_object()) return error_response(400, "invalid_json", "request body must be an object");
    return std::nullopt;
  }

  static std::optional<HttpResponse> read_specs(const Json& req, std::vector<std::string>& specs) {
    const Json list = req.value("automorphisms", Json::array());
    if (!list.is_array()) return error_response(400, "invalid_automorphism", "automorphisms must be a list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (!list[i].is_string()) {
        return error_response(400, "invalid_automorphism", "automorphism " + std::to_string(i) + " is not a string",
                              {{"index", i}});
      }
      specs.push_back(list[i].get<std::string>());
    }
    return std::nullopt;
  }

  // Validates and canonicalizes session fields.
  std::optional<HttpResponse> session_fields(const Json& req, Json& fields, bool fill_defaults) const {
    fields = Json::object();
    if (req.contains("progression")) {
      const Json& pj = req["progression"];
      Json names = Json::array();
      const bool empty = (pj.is_array() && pj.empty()) || (pj.is_string() && pj.get<std::string>().empty());
      if (!empty) {
        try {
          for (Chord c : progression_from_json(pj).chords) names.push_back(format_chord(c));
        } catch (const ProgressionParseError& e) {
          return error_response(400, "invalid_progression", e.what(), {{"token", e.token()}});
        }
      }
      fields["progression"] = names;
    } else if (fill_defaults) {
      fields["progression"] = Json::array();
    }
    if (req.contains("automorphisms")) {
      std::vector<std::string> specs;
      if (auto err = read_specs(req, specs)) return err;
      Json canonical = Json::array();
      for (std::size_t i = 0; i < specs.size(); ++i) {
        try {
          canonical.push_back(group_.encode(group_.decode(specs[i])));
        } catch (const std::exception& e) {
          return error_response(400, "invalid_automorphism", e.what(), {{"index", i}});
        }
      }
      fields["automorphisms"] = canonical;
    } else if (fill_defaults) {
      fields["automorphisms"] = Json::array();
    }
    return std::nullopt;
  }

  // n: index into the options list, {"U","P","L"} image words, or "N=..;PL=..,..".
  MonoidAutomorphism parse_n(const Json& nj) const {
    const Monoid& m = group_.monoid();
    if (nj.is_number_integer()) {
      const auto i = nj.get<long long>();
      if (i < 0 || static_cast<std::size_t>(i) >= group_.monoid_automorphisms().size()) {
        throw std::invalid_argument("n index out of range");
      }
      return group_.monoid_automorphisms()[static_cast<std::size_t>(i)];
    }
    if (nj.is_object()) {
      for (const char* key : {"U", "P", "L"}) {
        if (!nj.contains(key) || !nj[key].is_string()) {
          throw std::invalid_argument(std::string("n.") + key + " must be a word");
        }
      }
      return decode_generator_images(m, nj["U"].get<std::string>(),
                                     nj["P"].get<std::string>() + "," + nj["L"].get<std::string>());
    }
    if (nj.is_string()) {
      const std::string text = nj.get<std::string>();
      const auto parts = detail::split(text, ';');
      if (parts.size() == 2 && parts[0].substr(0, 2) == "N=" && parts[1].substr(0, 3) == "PL=") {
        return decode_generator_images(m, parts[0].substr(2), parts[1].substr(3));
      }
    }
    throw std::invalid_argument("n must be an index, an image object or \"N=..;PL=..,..\"");
  }

  static std::optional<AugPermutation> sigma_from_images(const Json& arr) {
    std::array<Quadrant, 4> img{};
    for (std::size_t i = 0; i < 4; ++i) {
      if (!arr[i].is_string()) return std::nullopt;
      try {
        const Chord c = parse_chord(arr[i].get<std::string>());
        if (!c.is_augmented()) return std::nullopt;
        img[i] = quadrant(c);
      } catch (const ParseError&) {
        return std::nullopt;
      }
    }
    std::array<Quadrant, 4> sorted = img;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != kQuadrants) return std::nullopt;
    return AugPermutation(img);
  }

  static std::string rejection_kind_name(RejectionKind k) {
    switch (k) {
      case RejectionKind::kInvalidOffsets: return "invalid_offsets";
      case RejectionKind::kInadmissibleSigma: return "inadmissible_sigma";
      case RejectionKind::kPropagationClash: return "propagation_clash";
      case RejectionKind::kConjugationFailure: return "conjugation_failure";
    }
    return "unknown";
  }

  const AutomorphismGroup& group_;
  SessionStore sessions_;
};

}  // namespace cubedance
