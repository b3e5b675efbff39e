#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "sfg/corpus.hpp"
#include "sfg/dsl.hpp"
#include "sfg/inference.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

sfg::dsl::Document load(const std::string& path) { return sfg::dsl::parse(slurp(path)); }

// Whitespace-separated 0/1 rows, one generator per line.
sfg::FMatrix read_binary_matrix(const std::string& path) {
    std::string text = slurp(path);
    std::vector<std::vector<uint8_t>> rows;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        std::vector<uint8_t> row;
        for (char c : tok) {
            if (c != '0' && c != '1')
                throw std::runtime_error("'" + path + "': expected 0/1 rows");
            row.push_back(static_cast<uint8_t>(c - '0'));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("'" + path + "': empty matrix");
    return sfg::FMatrix::from_rows(sfg::PrimeField(2), rows);
}

std::vector<double> parse_eps_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::runtime_error("--eps: no values given");
    for (double e : out)
        if (e < 0 || e > 1) throw std::runtime_error("--eps: values must lie in [0, 1]");
    return out;
}

std::vector<std::size_t> parse_perm(const std::string& s) {
    std::vector<std::size_t> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        long v = std::stol(item);
        if (v < 1) throw std::runtime_error("--perm: entries are 1-based");
        out.push_back(static_cast<std::size_t>(v - 1));
    }
    return out;
}

std::vector<std::string> parse_name_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

// Results are buffered and only reach the output stream on success.
void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
    out << text;
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"stabilizer and normalizer label codes on factor graphs"};
    app.require_subcommand(1);

    std::string file, name, out_path;
    std::size_t bound_dual = 6, bound_distance = 12, bound_decode = 10;

    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("-o,--output", out_path, "write results to a file instead of stdout");
    };

    // check
    auto* check = app.add_subcommand("check", "report code properties");
    check->add_option("file", file, "document to read")->required();
    check->add_option("name", name, "code name")->required();
    add_output(check);
    check->callback([&] {
        sfg::dsl::Document doc = load(file);
        sfg::GroupCode c = doc.resolve_code(name);
        std::ostringstream os;
        os << "self-orthogonal: " << yesno(is_self_orthogonal(c))
           << ", self-dual: " << yesno(is_self_dual(c))
           << ", gf4-linear: " << yesno(is_gf4_linear(c)) << ", rank " << c.rank() << ", n "
           << c.n() << "\n";
        emit(out_path, os.str());
    });

    // dual
    bool verify_dual = false;
    auto* dualc = app.add_subcommand("dual", "emit the symplectic dual of a code");
    dualc->add_option("file", file)->required();
    dualc->add_option("name", name)->required();
    dualc->add_flag("--verify", verify_dual,
                    "cross-check against brute-force enumeration of the ambient space");
    dualc->add_option("--bound-dual", bound_dual,
                      "largest n enumerated by --verify (default 6)");
    add_output(dualc);
    dualc->callback([&] {
        sfg::dsl::Document doc = load(file);
        sfg::GroupCode code = doc.resolve_code(name);
        sfg::GroupCode d = dual(code);
        std::ostringstream os;
        if (verify_dual) {
            if (code.n() > bound_dual)
                throw std::runtime_error("--verify: n exceeds --bound-dual (" +
                                         std::to_string(bound_dual) + ")");
            // Enumerate all 2^(2n) vectors and keep the orthogonal ones.
            std::size_t n = code.n();
            std::size_t count = 0;
            for (uint64_t v = 0; v < (uint64_t{1} << (2 * n)); ++v) {
                std::vector<uint8_t> x(n), z(n);
                for (std::size_t i = 0; i < n; ++i) {
                    x[i] = (v >> (2 * n - 1 - i)) & 1;
                    z[i] = (v >> (n - 1 - i)) & 1;
                }
                sfg::SympVector t(sfg::PrimeField(2), std::move(x), std::move(z));
                bool ortho = true;
                for (std::size_t r = 0; r < code.rank() && ortho; ++r)
                    ortho = (symp_inner(t, code.generator(r)) == 0);
                if (ortho != d.contains(t))
                    throw std::runtime_error("--verify: enumeration disagrees with the kernel");
                if (ortho) ++count;
            }
            if (count != (uint64_t{1} << d.rank()))
                throw std::runtime_error("--verify: enumeration count mismatch");
            os << "# verified against enumeration of " << (uint64_t{1} << (2 * n))
               << " vectors\n";
        }
        sfg::dsl::Document out;
        out.add_code(name + "_dual", d);
        os << serialize(out);
        emit(out_path, os.str());
    });

    // extract
    auto* extract = app.add_subcommand("extract", "extract the global code of a factor graph");
    extract->add_option("file", file)->required();
    extract->add_option("name", name, "ffg name")->required();
    add_output(extract);
    extract->callback([&] {
        sfg::dsl::Document doc = load(file);
        sfg::dsl::Document out;
        out.add_code(name + "_code", extract_global_code(doc.instantiate_ffg(name)));
        emit(out_path, serialize(out));
    });

    // distance
    auto* dist = app.add_subcommand("distance", "minimum weight of the dual modulo the code");
    dist->add_option("file", file)->required();
    dist->add_option("name", name)->required();
    dist->add_option("--bound-distance", bound_distance, "largest n attempted (default 12)");
    add_output(dist);
    dist->callback([&] {
        sfg::dsl::Document doc = load(file);
        sfg::CosetWeight w = min_coset_weight(doc.resolve_code(name), 2 * bound_distance);
        std::ostringstream os;
        if (w.self_dual)
            os << "min nonzero weight of C-dual: " << w.weight << " (self-dual, coset empty)\n";
        else
            os << "min weight of C-dual minus C: " << w.weight << "\n";
        emit(out_path, os.str());
    });

    // certify
    auto* certify = app.add_subcommand("certify", "composition-rule certificate for a factor graph");
    certify->add_option("file", file)->required();
    certify->add_option("name", name, "ffg name")->required();
    add_output(certify);
    certify->callback([&] {
        sfg::dsl::Document doc = load(file);
        sfg::CertifyResult res = certify_prop1(doc.instantiate_ffg(name));
        std::ostringstream os;
        for (const sfg::FactorReport& fr : res.factors)
            os << "factor " << fr.factor << ": self-orthogonal " << yesno(fr.self_orthogonal)
               << ", self-dual " << yesno(fr.self_dual) << "\n";
        os << "certificate: " << certificate_name(res.certificate) << "\n";
        emit(out_path, os.str());
    });

    // build
    auto* build = app.add_subcommand("build", "construct codes and factor graphs");
    build->require_subcommand(1);

    std::string b1_path, b2_path, out_name = "out";
    auto* bcss = build->add_subcommand("css", "CSS label code from two binary generator files");
    bcss->add_option("b1", b1_path, "first binary code (0/1 rows)")->required();
    bcss->add_option("b2", b2_path, "second binary code (0/1 rows)")->required();
    bcss->add_option("--name", out_name, "name of the emitted code");
    add_output(bcss);
    bcss->callback([&] {
        sfg::dsl::Document out;
        out.add_code(out_name, sfg::css(read_binary_matrix(b1_path), read_binary_matrix(b2_path)));
        emit(out_path, serialize(out));
    });

    std::size_t chain_len = 3;
    std::string boundary = "terminated";
    auto* bconv = build->add_subcommand("conv", "chain a trellis section into a factor graph");
    bconv->add_option("file", file)->required();
    bconv->add_option("name", name, "section name")->required();
    bconv->add_option("-L,--length", chain_len, "number of sections (default 3)");
    bconv->add_option("--boundary", boundary, "terminated | tailbiting");
    bconv->add_option("--name-out", out_name, "name of the emitted ffg");
    add_output(bconv);
    bconv->callback([&] {
        sfg::dsl::Document doc = load(file);
        sfg::Boundary b;
        if (boundary == "terminated") b = sfg::Boundary::Terminated;
        else if (boundary == "tailbiting") b = sfg::Boundary::TailBiting;
        else throw std::runtime_error("--boundary must be terminated or tailbiting");
        sfg::dsl::Document out;
        out.add_ffg(out_name, conv_chain(doc.section(name), chain_len, b));
        emit(out_path, serialize(out));
    });

    std::string inner_name, perm_spec, inputs_spec;
    auto* bturbo = build->add_subcommand("turbo", "serial concatenation through an interleaver");
    bturbo->add_option("file", file)->required();
    bturbo->add_option("outer", name, "outer ffg name")->required();
    bturbo->add_option("inner", inner_name, "inner ffg name")->required();
    bturbo->add_option("--perm", perm_spec, "1-based permutation, e.g. 2,3,1")->required();
    bturbo->add_option("--inputs", inputs_spec, "inner half-edges fed by the interleaver")
        ->required();
    bturbo->add_option("--name-out", out_name, "name of the emitted ffg");
    add_output(bturbo);
    bturbo->callback([&] {
        sfg::dsl::Document doc = load(file);
        sfg::dsl::Document out;
        out.add_ffg(out_name, turbo_serial(doc.instantiate_ffg(name), parse_perm(perm_spec),
                                           doc.instantiate_ffg(inner_name),
                                           parse_name_list(inputs_spec)));
        emit(out_path, serialize(out));
    });

    bool with_ffg = false;
    auto* bgs = build->add_subcommand("graphstate", "graph state label code from a graph");
    bgs->add_option("file", file)->required();
    bgs->add_option("name", name, "graph name")->required();
    bgs->add_flag("--ffg", with_ffg, "also emit the vertex/edge factor graph");
    bgs->add_option("--name-out", out_name, "name of the emitted code");
    add_output(bgs);
    bgs->callback([&] {
        sfg::dsl::Document doc = load(file);
        const sfg::GraphSpec& gs = doc.graph(name);
        sfg::dsl::Document out;
        out.add_code(out_name, graph_state_code(gs));
        if (with_ffg) out.add_ffg(out_name + "_ffg", graph_state_ffg(gs));
        emit(out_path, serialize(out));
    });

    // decode-sim
    std::string eps_spec = "0.01", decoder = "ml", format = "text";
    std::size_t trials = 10000;
    uint64_t seed = 1;
    auto* sim = app.add_subcommand("decode-sim", "Monte Carlo decoding of a stabilizer code");
    sim->add_option("file", file)->required();
    sim->add_option("name", name, "code name")->required();
    sim->add_option("--eps", eps_spec, "comma-separated depolarizing rates (default 0.01)");
    sim->add_option("--trials", trials, "trials per rate (default 10000)");
    sim->add_option("--seed", seed, "base seed (default 1)");
    sim->add_option("--decoder", decoder, "ml | coset");
    sim->add_option("--format", format, "text | records");
    sim->add_option("--bound-decode", bound_decode, "largest n attempted (default 10)");
    add_output(sim);
    sim->callback([&] {
        sfg::dsl::Document doc = load(file);
        sfg::GroupCode code = doc.resolve_code(name);
        sfg::DecodeMode mode;
        if (decoder == "ml") mode = sfg::DecodeMode::MostLikelyError;
        else if (decoder == "coset") mode = sfg::DecodeMode::MostLikelyCoset;
        else throw std::runtime_error("--decoder must be ml or coset");
        if (format != "text" && format != "records")
            throw std::runtime_error("--format must be text or records");
        std::ostringstream os;
        if (format == "records")
            os << "# epsilon trials failures rate ci_halfwidth decoder seed\n";
        for (double eps : parse_eps_list(eps_spec)) {
            sfg::SimResult r =
                simulate(code, sfg::ChannelModel::depolarizing(eps, code.n()), trials, seed, mode,
                         bound_decode);
            if (format == "records") {
                os << sim_record(eps, r) << "\n";
            } else {
                os << "eps " << eps << ": " << r.failures << "/" << r.trials
                   << " failures, rate " << r.rate << " (ci +/- " << r.ci_halfwidth << ")\n";
            }
        }
        emit(out_path, os.str());
    });

    // examples
    std::string outdir = "corpus";
    auto* examples = app.add_subcommand("examples", "write the bundled example corpus");
    examples->add_option("outdir", outdir, "target directory (default ./corpus)");
    examples->callback([&] {
        std::filesystem::create_directories(outdir);
        for (const sfg::corpus::CorpusFile& f : sfg::corpus::files()) {
            std::filesystem::path p = std::filesystem::path(outdir) / f.name;
            std::ofstream os(p, std::ios::binary);
            if (!os) throw std::runtime_error("cannot write '" + p.string() + "'");
            os << f.contents;
            std::cout << p.string() << "\n";
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
