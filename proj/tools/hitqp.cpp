// hitqp: hit-problem engine command line.
//
// Exit codes: 0 success / claim holds, 1 mathematical mismatch, 2 memory budget
// refusal, 3 usage or I/O error.

#include "hit/construction.hpp"
#include "hit/hit_space.hpp"
#include "hit/spikes.hpp"
#include "hit/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;

constexpr int exit_fail = 1;
constexpr int exit_budget = 2;
constexpr int exit_usage = 3;

std::uint64_t parse_bytes(const std::string& text)
{
    std::size_t used = 0;
    const double value = std::stod(text, &used);
    std::uint64_t scale = 1;
    if (used < text.size()) {
        switch (std::toupper(static_cast<unsigned char>(text[used]))) {
        case 'K': scale = std::uint64_t{1} << 10; break;
        case 'M': scale = std::uint64_t{1} << 20; break;
        case 'G': scale = std::uint64_t{1} << 30; break;
        case 'T': scale = std::uint64_t{1} << 40; break;
        default: throw std::invalid_argument("bad memory size '" + text + "'");
        }
    }
    if (value < 0)
        throw std::invalid_argument("negative memory size");
    return static_cast<std::uint64_t>(value * static_cast<double>(scale));
}

hit::Degree resolve_degree(int k, const std::optional<int>& n, const std::optional<int>& d)
{
    if (n.has_value() == d.has_value())
        throw hit::verify::UsageError("give exactly one of --n and --d");
    if (n) {
        if (*n < 0)
            throw hit::verify::UsageError("--n must be non-negative");
        return static_cast<hit::Degree>(*n);
    }
    if (*d < 0 || *d > 30)
        throw hit::verify::UsageError("--d must be in 0..30");
    return hit::n_of(k, *d);
}

json dim_json(const hit::HitSpace& hs, bool with_omega)
{
    json j{{"k", hs.k()},
           {"n", hs.n()},
           {"monomials", hs.columns->size()},
           {"rank", hs.space.rank()},
           {"dim", hit::qp_dim(hs)}};
    if (with_omega) {
        j["omega"] = json::array();
        for (const auto& [w, d] : hit::omega_decomposition(hs))
            j["omega"].push_back({{"omega", std::vector<std::uint32_t>(w.entries().begin(), w.entries().end())},
                                  {"dim", d}});
    }
    return j;
}

void write_output(const std::string& text, const std::string& out)
{
    if (out.empty() || out == "-") {
        std::cout << text << '\n';
        return;
    }
    std::ofstream f(out);
    if (!(f << text << '\n'))
        throw std::runtime_error("cannot write " + out);
}

std::vector<int> parse_int_list(const std::string& text)
{
    std::vector<int> out;
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');)
        out.push_back(std::stoi(item));
    return out;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hit problem engine: Steenrod action on GF(2)[x_1..x_k], QP_k dimensions and admissible bases"};
    app.require_subcommand(1);
    app.fallthrough();

    unsigned threads = 1;
    std::string budget = "2G";
    std::string cache_dir;
    app.add_option("--threads", threads, "Worker threads for generator expansion")->envname("HITQP_THREADS");
    app.add_option("--memory-budget", budget, "Memory budget, e.g. 512M or 2G")->envname("HITQP_MEMORY_BUDGET");
    app.add_option("--cache-dir", cache_dir, "Directory for hit-space snapshots")->envname("HITQP_CACHE_DIR");

    std::optional<int> k, n, d, b, samples;
    std::optional<std::uint64_t> seed;
    bool with_omega = false, minimal = false, gc = false, as_csv = false;
    std::string out, claim, ds_text, format = "json";

    auto* dim = app.add_subcommand("dim", "Dimension of (QP_k)_n");
    dim->add_option("--k", k, "Number of variables")->required();
    dim->add_option("--n", n, "Degree");
    dim->add_option("--d", d, "Use degree (k-1)(2^d-1)");
    dim->add_flag("--omega", with_omega, "Include the weight-vector decomposition");
    dim->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* table = app.add_subcommand("table", "CSV dimension table over degrees (k-1)(2^d-1)");
    table->add_option("--k", k, "Number of variables")->required();
    table->add_option("--ds", ds_text, "Comma-separated d values")->required();

    auto* verify = app.add_subcommand("verify", "Run a registered claim check");
    verify->add_option("claim", claim, "Claim identifier")->required();
    verify->add_option("--k", k);
    verify->add_option("--d", d);
    verify->add_option("--n", n);
    verify->add_option("--b", b);
    verify->add_option("--seed", seed);
    verify->add_option("--samples", samples);
    verify->add_option("--ds", ds_text, "Comma-separated exponents d_1,...,d_(k-1)");

    auto* claims = app.add_subcommand("claims", "List registered claims");

    auto* basis = app.add_subcommand("basis", "Admissible monomials of degree n, descending");
    basis->add_option("--k", k)->required();
    basis->add_option("--n", n);
    basis->add_option("--d", d);
    basis->add_option("--out", out, "Output file (default stdout)");

    auto* spikes = app.add_subcommand("spikes", "Spikes of degree n");
    spikes->add_option("--k", k)->required();
    spikes->add_option("--n", n)->required();
    spikes->add_flag("--minimal", minimal, "Only the minimal spike");

    auto* cache = app.add_subcommand("cache", "Snapshot cache maintenance");
    cache->add_flag("--gc", gc, "Remove snapshots with a stale format or order version");
    cache->add_flag("--csv", as_csv, "List entries as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    hit::EngineConfig config;
    try {
        config.memory_budget_bytes = parse_bytes(budget);
        config.threads = std::max(1U, threads);
        if (!cache_dir.empty())
            config.cache_dir = cache_dir;

        if (*dim) {
            const auto degree = resolve_degree(*k, n, d);
            auto hs = hit::hit_space(*k, degree, config);
            const auto j = dim_json(*hs, with_omega);
            if (format == "json") {
                std::cout << j.dump() << '\n';
                return 0;
            }
            std::cout << "k,n,monomials,rank,dim\n"
                      << j["k"] << ',' << j["n"] << ',' << j["monomials"] << ',' << j["rank"] << ',' << j["dim"] << '\n';
            if (with_omega) {
                std::cout << "omega,dim\n";
                for (const auto& e : j["omega"]) {
                    std::string w;
                    for (const auto& v : e["omega"])
                        w += (w.empty() ? "" : " ") + std::to_string(v.get<unsigned>());
                    std::cout << '"' << w << "\"," << e["dim"] << '\n';
                }
            }
            return 0;
        }
        if (*table) {
            std::ostringstream head, row;
            head << "n = " << (*k - 1) << "(2^d-1)";
            row << "dim(QP_" << *k << ")_n";
            for (int dv : parse_int_list(ds_text)) {
                auto hs = hit::hit_space(*k, hit::n_of(*k, dv), config);
                head << ",d=" << dv;
                row << ',' << hit::qp_dim(*hs);
            }
            std::cout << head.str() << '\n' << row.str() << '\n';
            return 0;
        }
        if (*claims) {
            for (const auto& c : hit::verify::registry()) {
                std::cout << c.name << " (";
                for (std::size_t i = 0; i < c.required.size(); ++i)
                    std::cout << (i ? ", " : "") << "--" << c.required[i];
                std::cout << "): " << c.summary << '\n';
            }
            return 0;
        }
        if (*verify) {
            hit::verify::ClaimParams params{k, d, n, b, seed, samples, {}};
            if (!ds_text.empty())
                params.ds = parse_int_list(ds_text);
            hit::verify::Session session(config);
            auto report = hit::verify::run_claim(session, claim, params);
            std::cout << report.to_json().dump(2) << '\n';
            return report.pass ? 0 : exit_fail;
        }
        if (*basis) {
            const auto degree = resolve_degree(*k, n, d);
            auto hs = hit::hit_space(*k, degree, config);
            json list = json::array();
            for (const auto& m : hit::admissible_basis(*hs).monomials)
                list.push_back(m.to_string());
            write_output(list.dump(), out);
            return 0;
        }
        if (*spikes) {
            if (*n < 0)
                throw hit::verify::UsageError("--n must be non-negative");
            if (minimal) {
                std::cout << json(hit::minimal_spike(*k, static_cast<hit::Degree>(*n)).to_string()).dump() << '\n';
                return 0;
            }
            json list = json::array();
            for (const auto& z : hit::spikes(*k, static_cast<hit::Degree>(*n)))
                list.push_back(z.to_string());
            std::cout << list.dump() << '\n';
            return 0;
        }
        if (*cache) {
            if (!config.cache_dir)
                throw hit::verify::UsageError("cache needs --cache-dir");
            namespace fs = std::filesystem;
            if (!fs::exists(*config.cache_dir)) {
                std::cout << (as_csv ? "file,k,n,format_version,order_version,status\n" : "[]\n");
                return 0;
            }
            json entries = json::array();
            std::vector<fs::path> files;
            for (const auto& e : fs::directory_iterator(*config.cache_dir))
                if (e.is_regular_file() && e.path().extension() == ".hitf2")
                    files.push_back(e.path());
            std::sort(files.begin(), files.end());
            for (const auto& f : files) {
                json entry{{"file", f.filename().string()}};
                bool stale = true;
                try {
                    std::ifstream in(f, std::ios::binary);
                    auto h = hit::gf2::peek_snapshot_header(in);
                    entry["k"] = h.k;
                    entry["n"] = h.n;
                    entry["format_version"] = h.format_version;
                    entry["order_version"] = h.order_version;
                    stale = h.format_version != hit::snapshot_format_version ||
                            h.order_version != hit::column_order_version;
                } catch (const std::runtime_error&) {
                }
                entry["status"] = stale ? (gc ? "removed" : "stale") : "current";
                if (stale && gc)
                    fs::remove(f);
                entries.push_back(entry);
            }
            if (as_csv) {
                std::cout << "file,k,n,format_version,order_version,status\n";
                for (const auto& e : entries)
                    std::cout << e["file"].get<std::string>() << ',' << e.value("k", 0) << ',' << e.value("n", 0)
                              << ',' << e.value("format_version", 0) << ',' << e.value("order_version", 0) << ','
                              << e["status"].get<std::string>() << '\n';
            } else {
                std::cout << entries.dump() << '\n';
            }
            return 0;
        }
    } catch (const hit::BudgetExceeded& e) {
        std::cerr << "refused: " << e.what() << '\n';
        return exit_budget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
    return exit_usage;
}
