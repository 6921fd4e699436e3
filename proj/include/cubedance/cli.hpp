#pragma once

// Command-line front end. run_cli() takes the arguments after the program
// name and writes to the given streams, so tests can drive it in-process.
//
// Exit codes: 0 success, 1 failed verification or runtime error, 2 usage error.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cubedance/graph.hpp"
#include "cubedance/progression.hpp"
#include "cubedance/service.hpp"
#include "cubedance/verification.hpp"

namespace cubedance {

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

namespace detail {

inline void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw CLI::ValidationError("--format", "unsupported format \"" + format + "\"");
}

inline bool matches_filter(const std::string& encoding, const std::string& filter) {
  if (filter.empty()) return true;
  std::map<std::string, std::string> fields;
  for (auto part : split(encoding, ';')) {
    const auto eq = part.find('=');
    fields[std::string(part.substr(0, eq))] = std::string(part.substr(eq + 1));
  }
  for (auto cond : split(filter, ';')) {
    const auto eq = cond.find('=');
    if (eq == std::string_view::npos) {
      throw CLI::ValidationError("--filter", "expected key=value, got \"" + std::string(cond) + "\"");
    }
    auto it = fields.find(std::string(cond.substr(0, eq)));
    if (it == fields.end() || it->second != cond.substr(eq + 1)) return false;
  }
  return true;
}

inline std::string text_chain_line(std::size_t step, const Progression& p) {
  std::string colors;
  for (std::size_t i = 0; i < p.annotations.size(); ++i) {
    if (i) colors += " | ";
    colors += p.annotations[i].empty() ? "-" : p.annotations[i].to_string();
  }
  return std::to_string(step) + ": " + format_progression(p) +
         (colors.empty() ? "" : "   [" + colors + "]");
}

// CLI and HTTP transform responses must match byte for byte.
inline Criterion check_cli_service_consistency(const AutomorphismGroup& group) {
  const std::string progression = "C, Am, F, G";
  const std::vector<std::string> specs = {group.encode(group[1234]), group.encode(group[5000]),
                                          group.encode(group[7000])};
  std::vector<std::string> args = {"transform", "--progression", progression, "--format", "json"};
  for (const auto& s : specs) {
    args.push_back("--aut");
    args.push_back(s);
  }
  std::ostringstream cli_out, cli_err;
  const int code = run_cli(args, cli_out, cli_err);

  const auto state = std::filesystem::temp_directory_path() / "cubedance-verify-sessions";
  Service service(group, state);
  httplib::Server server;
  service.mount(server);
  const int port = server.bind_to_any_port("127.0.0.1");
  std::string http_body;
  int http_status = 0;
  if (port > 0) {
    std::thread worker([&] { server.listen_after_bind(); });
    server.wait_until_ready();
    httplib::Client client("127.0.0.1", port);
    Json req = {{"progression", progression}, {"automorphisms", specs}};
    if (auto res = client.Post("/api/transform", req.dump(), "application/json")) {
      http_status = res->status;
      http_body = res->body;
    }
    server.stop();
    worker.join();
  }
  const bool same = code == 0 && http_status == 200 && cli_out.str() == http_body;
  return {"cli-service-consistency",
          "CLI and service transform outputs are byte-identical in JSON mode", same,
          port > 0 ? (same ? std::to_string(http_body.size()) + " identical bytes"
                           : "outputs differ (cli exit " + std::to_string(code) + ", http " +
                                 std::to_string(http_status) + ")")
                   : "could not bind a local port"};
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Colored Cube Dance automorphism engine", "cubedance"};
  app.require_subcommand(1, 1);

  std::string format = "text";
  auto* verify = app.add_subcommand("verify", "Run the full verification suite");
  verify->add_option("--format", format, "text or json");

  auto* monoid = app.add_subcommand("monoid", "List the monoid elements");
  monoid->add_option("--format", format, "text or json");

  bool count = false, list = false;
  std::string filter;
  auto* auts = app.add_subcommand("auts", "Query the automorphism group");
  auts->add_flag("--count", count, "Print the number of (filtered) automorphisms");
  auts->add_flag("--list", list, "List (filtered) automorphisms");
  auts->add_option("--filter", filter, "key=value[;key=value] on encoding fields N, PL, sigma, g");
  auts->add_option("--format", format, "text or json (json lines with --list)");

  std::string chord_name;
  auto* nbrs = app.add_subcommand("neighbors", "Colored adjacency of a chord");
  nbrs->add_option("chord", chord_name, "Chord name, e.g. Caug")->required();
  nbrs->add_option("--format", format, "text or json");

  std::string progression_text;
  std::vector<std::string> specs;
  auto* xform = app.add_subcommand("transform", "Transform a progression by a chain of automorphisms");
  xform->add_option("--progression", progression_text, "Chord names, comma or space separated")->required();
  xform->add_option("--aut", specs, "Automorphism encoding (repeatable)")->allow_extra_args(false);
  xform->add_option("--format", format, "text or json");

  std::string graph_format = "dot";
  std::string out_file;
  auto* graph = app.add_subcommand("graph", "Export the colored Cube Dance");
  graph->add_option("--format", graph_format, "dot or json");
  graph->add_option("--out", out_file, "Output file (default: stdout)");

  std::string host = "127.0.0.1";
  int port = 0;
  std::string state_dir;
  std::string static_dir;
  auto* serve = app.add_subcommand("serve", "Start the local HTTP service");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (default: $CUBEDANCE_PORT or 8080)");
  serve->add_option("--state-dir", state_dir, "Session directory");
  serve->add_option("--static-dir", static_dir, "Serve static UI files from this directory");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (graph->parsed()) {
      detail::require_format(graph_format, {"dot", "json"});
    } else {
      detail::require_format(format, {"text", "json"});
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (nbrs->parsed()) {
      const Chord c = parse_chord(chord_name);
      const auto ns = neighbors(c);
      if (format == "json") {
        Json list = Json::array();
        for (const auto& n : ns) {
          list.push_back({{"chord", format_chord(n.chord)}, {"color", std::string(1, generator_symbol(n.color))}});
        }
        out << Json{{"chord", format_chord(c)}, {"neighbors", list}}.dump(2) << "\n";
      } else {
        for (const auto& n : ns) out << format_chord(n.chord) << "\t" << generator_symbol(n.color) << "\n";
      }
      return 0;
    }

    if (graph->parsed()) {
      const std::string text = graph_format == "dot" ? to_dot() : graph_json().dump(2) + "\n";
      if (out_file.empty()) {
        out << text;
      } else {
        std::ofstream f(out_file);
        f << text;
        if (!f) {
          err << "cannot write " << out_file << "\n";
          return 1;
        }
      }
      return 0;
    }

    const AutomorphismGroup& group = standard_group();

    if (monoid->parsed()) {
      const Monoid& m = group.monoid();
      if (format == "json") {
        Json list = Json::array();
        for (std::size_t i = 0; i < m.size(); ++i) {
          list.push_back({{"index", i}, {"word", m.word(i)}, {"digest", m.element(i).digest()}});
        }
        out << list.dump(2) << "\n";
      } else {
        for (std::size_t i = 0; i < m.size(); ++i) {
          out << std::setw(2) << i << "  " << std::left << std::setw(10) << m.word(i) << std::right
              << m.element(i).digest() << "\n";
        }
      }
      return 0;
    }

    if (auts->parsed()) {
      std::vector<const ActionAutomorphism*> selected;
      std::vector<std::string> codes;
      for (const auto& a : group.elements()) {
        std::string code = group.encode(a);
        if (detail::matches_filter(code, filter)) {
          selected.push_back(&a);
          codes.push_back(std::move(code));
        }
      }
      if (list) {
        for (std::size_t i = 0; i < selected.size(); ++i) {
          if (format == "json") {
            Json nu = Json::array();
            for (auto v : selected[i]->nu) nu.push_back(v);
            out << Json{{"encoding", codes[i]}, {"nu", nu}}.dump() << "\n";
          } else {
            out << codes[i] << "\n";
          }
        }
      }
      if (count || !list) {
        if (format == "json") {
          out << Json{{"count", selected.size()}}.dump() << "\n";
        } else {
          out << selected.size() << "\n";
        }
      }
      return 0;
    }

    if (xform->parsed()) {
      const Progression p = parse_progression(progression_text);
      if (format == "json") {
        out << json_body(chain_json(p, specs, group));
        return 0;
      }
      const auto chain = transform_chain(p, specs, group);
      out << detail::text_chain_line(0, p) << "\n";
      for (std::size_t i = 0; i < chain.size(); ++i) {
        out << detail::text_chain_line(i + 1, chain[i]) << "\n";
      }
      return 0;
    }

    if (verify->parsed()) {
      VerificationReport report = verify_engine(group);
      report.criteria.push_back(detail::check_cli_service_consistency(group));
      if (format == "json") {
        Json list = Json::array();
        for (const auto& c : report.criteria) {
          list.push_back({{"id", c.id}, {"description", c.description}, {"passed", c.passed}, {"detail", c.detail}});
        }
        out << Json{{"passed", report.all_passed()}, {"criteria", list}}.dump(2) << "\n";
      } else {
        std::size_t passed = 0;
        for (const auto& c : report.criteria) {
          passed += c.passed ? 1 : 0;
          out << (c.passed ? "PASS  " : "FAIL  ") << c.id << ": " << c.description << " (" << c.detail << ")\n";
        }
        out << passed << "/" << report.criteria.size() << " criteria passed\n";
      }
      return report.all_passed() ? 0 : 1;
    }

    if (serve->parsed()) {
      if (port == 0) {
        const char* env = std::getenv("CUBEDANCE_PORT");
        port = env ? std::atoi(env) : 8080;
      }
      const std::filesystem::path dir =
          state_dir.empty() ? std::filesystem::temp_directory_path() / "cubedance-sessions"
                            : std::filesystem::path(state_dir);
      Service service(group, dir);
      httplib::Server server;
      service.mount(server);
      if (!static_dir.empty() && !server.set_mount_point("/", static_dir)) {
        err << "cannot serve static files from " << static_dir << "\n";
        return 1;
      }
      out << "listening on http://" << host << ":" << port << " (sessions in " << dir.string() << ")\n";
      out.flush();
      if (!server.listen(host, port)) {
        err << "cannot listen on " << host << ":" << port << "\n";
        return 1;
      }
      return 0;
    }
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ProgressionParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ChainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace cubedance
