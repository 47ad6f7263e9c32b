#include "girthforge/construct.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "girthforge/cycles.hpp"
#include "girthforge/digraph_io.hpp"

namespace girthforge {

namespace {

VertexMapping block_projection(const BlockDigraph& d0) {
    VertexMapping psi;
    psi.domain_order = d0.vertex_count();
    psi.codomain_order = d0.block_count();
    psi.image.resize(psi.domain_order);
    for (int v = 0; v < psi.domain_order; ++v) psi.image[v] = d0.block_of(v);
    return psi;
}

} // namespace

ConstructionArtifact construct(const Digraph& pattern, const ModelParams& params,
                               int max_retries) {
    if (pattern.order() < 1) throw std::invalid_argument("pattern must be nonempty");
    const BlockDigraph d0(pattern, params.n);
    for (int attempt = 0; attempt <= max_retries; ++attempt) {
        const std::uint64_t seed = params.seed + static_cast<std::uint64_t>(attempt);
        SampledDigraph dprime = sample_with_seed(d0, params.p(), seed);
        CycleMatching cm = extract_cycle_matching(dprime, params.ell);
        if (!cm.disjoint) continue; // intersecting short cycles: resample
        ConstructionArtifact artifact;
        artifact.pattern = pattern;
        artifact.params = params;
        artifact.dstar = remove_arcs(dprime.arcs, cm.matching);
        artifact.dprime = std::move(dprime);
        artifact.matching = std::move(cm.matching);
        artifact.psi = block_projection(d0);
        artifact.attempts = attempt + 1;
        if (!girth_at_least(girth(artifact.dstar), params.ell))
            throw std::logic_error("matching removal left a short cycle");
        if (check_acyclic_hom(artifact.dstar, pattern, artifact.psi))
            throw std::logic_error("block projection is not an acyclic homomorphism");
        if (!artifact.psi.surjective())
            throw std::logic_error("block projection is not surjective");
        return artifact;
    }
    throw RetriesExhausted("no sample with pairwise-disjoint short cycles after " +
                           std::to_string(max_retries + 1) + " attempts");
}

VertexMapping derive_f(const VertexMapping& phi, const ConstructionArtifact& artifact,
                       const Digraph& c) {
    if (check_acyclic_hom(artifact.dstar, c, phi))
        throw InvalidColouring("phi is not an acyclic homomorphism to the codomain");
    const int a = artifact.pattern.order();
    const int n = artifact.params.n;
    const int k = artifact.params.k;
    VertexMapping f;
    f.domain_order = a;
    f.codomain_order = c.order();
    f.image.resize(a);
    for (int i = 0; i < a; ++i) {
        std::vector<int> count(c.order(), 0);
        for (int pos = 0; pos < n; ++pos) ++count[phi.image[i * n + pos]];
        int choice = -1;
        for (int x = 0; x < c.order(); ++x)
            if (static_cast<long long>(k) * count[x] >= n) {
                choice = x; // smallest qualifying colour
                break;
            }
        if (choice < 0)
            throw NoMajorityColour("block " + std::to_string(i) +
                                   " has no colour reaching the n/k threshold");
        f.image[i] = choice;
    }
    return f;
}

const char* to_string(EntryStatus s) {
    switch (s) {
    case EntryStatus::Verified: return "Verified";
    case EntryStatus::FailedWithWitness: return "FailedWithWitness";
    case EntryStatus::Truncated: return "Truncated";
    }
    return "?";
}

bool VerificationReport::all_verified() const {
    if (!girth_ok || !psi_ok) return false;
    for (const auto& e : part_ii)
        if (e.status != EntryStatus::Verified) return false;
    for (const auto& e : part_iii)
        if (e.status != EntryStatus::Verified) return false;
    return true;
}

bool VerificationReport::any_truncated() const {
    for (const auto& e : part_ii)
        if (e.status == EntryStatus::Truncated) return true;
    for (const auto& e : part_iii)
        if (e.status == EntryStatus::Truncated) return true;
    return false;
}

VerificationReport verify_theorem1(const ConstructionArtifact& artifact, int k,
                                   std::optional<std::vector<Digraph>> codomains,
                                   std::optional<std::uint64_t> max_homs) {
    VerificationReport report;
    report.girth_ok = girth_at_least(girth(artifact.dstar), artifact.params.ell);
    report.psi_ok = !check_acyclic_hom(artifact.dstar, artifact.pattern, artifact.psi) &&
                    artifact.psi.surjective();

    std::vector<Digraph> cs;
    if (codomains) {
        cs = std::move(*codomains);
    } else {
        if (k > 3)
            throw std::invalid_argument(
                "full codomain enumeration is limited to k <= 3; pass an explicit list");
        cs = all_labeled_digraphs_up_to(k);
    }

    const Digraph& d = artifact.pattern;
    const Digraph& dstar = artifact.dstar;

    report.part_ii.resize(cs.size());
    report.part_iii.clear();

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::size_t ci = 0; ci < cs.size(); ++ci) {
        const Digraph& c = cs[ci];
        ExistenceEntry entry;
        entry.codomain = c;
        auto from_pattern = find_acyclic_hom(d, c);
        auto from_dstar = find_acyclic_hom(dstar, c);
        entry.hom_from_pattern = from_pattern.has_value();
        entry.hom_from_dstar = from_dstar.has_value();
        entry.agree = entry.hom_from_pattern == entry.hom_from_dstar;
        if (entry.agree) {
            entry.status = EntryStatus::Verified;
        } else {
            entry.status = EntryStatus::FailedWithWitness;
            entry.witness = entry.hom_from_pattern ? from_pattern : from_dstar;
        }
        report.part_ii[ci] = std::move(entry);
    }

    // Factorization table, for pattern-pointed codomains only.
    for (const Digraph& c : cs) {
        PointedCheck pc = is_pointed(c, d, max_homs);
        if (pc.status == CheckStatus::False) continue;
        FactorizationEntry entry;
        entry.codomain = c;
        if (pc.status == CheckStatus::Truncated) {
            entry.status = EntryStatus::Truncated;
            entry.detail = "pointedness enumeration hit the cap";
            report.part_iii.push_back(std::move(entry));
            continue;
        }
        HomEnumeration phis = enumerate_acyclic_homs(dstar, c, max_homs);
        HomEnumeration fs = enumerate_acyclic_homs(d, c, max_homs);
        if (phis.truncated || fs.truncated) {
            entry.status = EntryStatus::Truncated;
            entry.detail = "colouring enumeration hit the cap";
            report.part_iii.push_back(std::move(entry));
            continue;
        }
        entry.colourings_checked = phis.maps.size();
        for (const VertexMapping& phi : phis.maps) {
            VertexMapping f;
            try {
                f = derive_f(phi, artifact, c);
            } catch (const NoMajorityColour&) {
                entry.status = EntryStatus::FailedWithWitness;
                entry.witness_phi = phi;
                entry.detail = "no block colour reaches the n/k threshold";
                break;
            }
            if (compose(f, artifact.psi) != phi) {
                entry.status = EntryStatus::FailedWithWitness;
                entry.witness_phi = phi;
                entry.witness_f = f;
                entry.detail = "phi does not equal the derived factor composed with psi";
                break;
            }
            // Uniqueness: scan all acyclic homomorphisms from the pattern.
            int factor_count = 0;
            bool matches_derived = false;
            for (const VertexMapping& g : fs.maps)
                if (compose(g, artifact.psi) == phi) {
                    ++factor_count;
                    if (g == f) matches_derived = true;
                }
            if (factor_count != 1 || !matches_derived) {
                entry.status = EntryStatus::FailedWithWitness;
                entry.witness_phi = phi;
                entry.witness_f = f;
                entry.detail = "factorization is not unique among pattern colourings";
                break;
            }
        }
        report.part_iii.push_back(std::move(entry));
    }
    return report;
}

ArtifactUniqueness check_unique_colourability_of_artifact(
    const ConstructionArtifact& artifact, std::optional<std::uint64_t> max_homs) {
    ArtifactUniqueness result;
    result.pattern_is_core = is_core(artifact.pattern).core;
    result.check = is_uniquely_colourable(artifact.dstar, artifact.pattern, max_homs);
    return result;
}

namespace {

std::string real17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_artifact(const ConstructionArtifact& artifact, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    const fs::path base(dir);

    DigraphFile pattern_file{artifact.pattern, "pattern", std::nullopt, std::nullopt};
    write_digraph_file((base / "pattern.dg").string(), pattern_file);

    DigraphFile dprime_file{artifact.dprime.arcs, "dprime",
                            std::pair{artifact.pattern.order(), artifact.params.n},
                            artifact.dprime.seed_used};
    write_digraph_file((base / "dprime.dg").string(), dprime_file);

    DigraphFile dstar_file{artifact.dstar, "dstar",
                           std::pair{artifact.pattern.order(), artifact.params.n},
                           std::nullopt};
    write_digraph_file((base / "dstar.dg").string(), dstar_file);

    {
        std::ofstream out(base / "matching.txt", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write matching.txt");
        for (const Arc& a : artifact.matching) out << a.from << " " << a.to << "\n";
    }
    {
        std::ofstream out(base / "psi.txt", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write psi.txt");
        out << format_mapping(artifact.psi) << "\n";
    }
    {
        std::ofstream out(base / "meta", std::ios::binary);
        if (!out) throw std::runtime_error("cannot write meta");
        out << "n " << artifact.params.n << "\n";
        out << "ell " << artifact.params.ell << "\n";
        out << "k " << artifact.params.k << "\n";
        out << "eps " << real17(artifact.params.eps) << "\n";
        out << "seed " << artifact.params.seed << "\n";
        if (artifact.params.forced_p)
            out << "forced_p " << real17(*artifact.params.forced_p) << "\n";
        out << "unsafe " << (artifact.params.unsafe ? 1 : 0) << "\n";
        out << "seed_used " << artifact.dprime.seed_used << "\n";
        out << "attempts " << artifact.attempts << "\n";
    }
}

ConstructionArtifact read_artifact(const std::string& dir) {
    namespace fs = std::filesystem;
    const fs::path base(dir);

    std::map<std::string, std::string> meta;
    {
        std::ifstream in(base / "meta");
        if (!in) throw std::runtime_error("cannot open " + (base / "meta").string());
        std::string key, value;
        while (in >> key >> value) meta[key] = value;
    }
    auto need = [&](const std::string& key) -> const std::string& {
        auto it = meta.find(key);
        if (it == meta.end())
            throw std::runtime_error("meta is missing key '" + key + "'");
        return it->second;
    };

    ConstructionArtifact artifact;
    const int n = std::stoi(need("n"));
    const int ell = std::stoi(need("ell"));
    const int k = std::stoi(need("k"));
    const double eps = std::stod(need("eps"));
    const std::uint64_t seed = std::stoull(need("seed"));
    const bool unsafe = meta.count("unsafe") && meta["unsafe"] == "1";
    std::optional<double> forced_p;
    if (meta.count("forced_p")) forced_p = std::stod(meta["forced_p"]);
    artifact.params = unsafe ? ModelParams::unsafe_checked(n, ell, k, eps, seed, forced_p)
                             : ModelParams::checked(n, ell, k, eps, seed);

    artifact.pattern = read_digraph_file((base / "pattern.dg").string()).graph;
    DigraphFile dprime_file = read_digraph_file((base / "dprime.dg").string());
    artifact.dprime = SampledDigraph{BlockDigraph(artifact.pattern, n),
                                     std::move(dprime_file.graph),
                                     std::stoull(need("seed_used"))};
    artifact.dstar = read_digraph_file((base / "dstar.dg").string()).graph;
    artifact.attempts = std::stoi(need("attempts"));

    {
        std::ifstream in(base / "matching.txt");
        if (!in) throw std::runtime_error("cannot open matching.txt");
        int u, v;
        while (in >> u >> v) artifact.matching.push_back({u, v});
    }
    {
        std::ifstream in(base / "psi.txt");
        if (!in) throw std::runtime_error("cannot open psi.txt");
        std::string line;
        std::getline(in, line);
        artifact.psi = parse_mapping_line(line, artifact.pattern.order());
    }

    if (remove_arcs(artifact.dprime.arcs, artifact.matching) != artifact.dstar)
        throw std::runtime_error("artifact inconsistent: dstar != dprime - matching");
    return artifact;
}

} // namespace girthforge
