#include "catapt/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "catapt/error.hpp"
#include "catapt/format.hpp"
#include "catapt/numeric.hpp"

namespace catapt {

void PerceptionModel::validate() const {
    if (products.size() < 2) raise(errc::domain_error, "model needs at least 2 products");
    std::set<std::string> unique(products.begin(), products.end());
    if (unique.size() != products.size())
        raise(errc::duplicate_product_labels, "model has duplicate product labels");
    if (attributes.size() < 2) raise(errc::domain_error, "model needs at least 2 attributes");
    if (intensity.rows() != static_cast<long>(products.size()) ||
        intensity.cols() != static_cast<long>(attributes.size()))
        raise(errc::domain_error, "intensity matrix does not match products x attributes");
    if (!(noise_sd > 0.0)) raise(errc::domain_error, "noise_sd must be positive");
    if (apt_threshold < 0.0) raise(errc::domain_error, "apt_threshold must be >= 0");
    if (!hedonic_means.empty()) {
        if (!(hedonic_sd > 0.0)) raise(errc::domain_error, "hedonic_sd must be positive");
        for (const auto& p : products) {
            const auto it = hedonic_means.find(p);
            if (it == hedonic_means.end())
                raise(errc::domain_error, "hedonic mean missing for product " + p);
            if (it->second < 1.0 || it->second > 9.0)
                raise(errc::domain_error, "hedonic means must lie in [1, 9]");
        }
    }
}

Eigen::VectorXd PerceptionModel::pivot_intensity() const {
    return intensity.colwise().mean();
}

double PerceptionModel::cata_probability(int product, int attribute) const {
    return normal_cdf((intensity(product, attribute) - cata_threshold) / noise_sd);
}

double PerceptionModel::apt_probability(int product, int attribute) const {
    const double pivot = pivot_intensity()(attribute);
    return normal_cdf((intensity(product, attribute) - pivot - apt_threshold) /
                      (noise_sd * std::sqrt(2.0)));
}

namespace {

int clamp_score(double x) {
    const int rounded = static_cast<int>(std::lround(x));
    return std::min(9, std::max(1, rounded));
}

ResponseDataset simulate_impl(const PerceptionModel& model, int panelists, const SeedSpec& seed,
                              bool apt) {
    model.validate();
    if (panelists < 1) raise(errc::domain_error, "simulate: panelists must be >= 1");

    const int I = static_cast<int>(model.products.size());
    const int J = static_cast<int>(model.attributes.size());
    const Eigen::VectorXd pivot = model.pivot_intensity();
    const bool hedonic = !model.hedonic_means.empty();
    const SeedSpec stream =
        seed.with_label(seed.stream_label.empty() ? (apt ? "apt" : "cata") : seed.stream_label);

    std::vector<ResponseRow> rows;
    rows.reserve(static_cast<std::size_t>(I) * panelists);
    for (int i = 0; i < I; ++i) {
        for (int p = 1; p <= panelists; ++p) {
            // one substream per (product, panelist) cell
            Rng rng(stream, static_cast<std::uint64_t>(i) * panelists + (p - 1));
            ResponseRow row;
            row.product = model.products[i];
            row.panelist = p;
            row.citations.reserve(J);
            for (int j = 0; j < J; ++j) {
                if (apt) {
                    const double coded = model.intensity(i, j) + model.noise_sd * rng.normal();
                    // the pivot is sipped fresh for every comparison
                    const double ref = pivot(j) + model.noise_sd * rng.normal();
                    row.citations.push_back(coded > ref + model.apt_threshold ? 1 : 0);
                } else {
                    const double perceived = model.intensity(i, j) + model.noise_sd * rng.normal();
                    row.citations.push_back(perceived > model.cata_threshold ? 1 : 0);
                }
            }
            if (hedonic) {
                const double mean = model.hedonic_means.at(model.products[i]);
                row.hedonic = clamp_score(mean + model.hedonic_sd * rng.normal());
            }
            rows.push_back(std::move(row));
        }
    }
    return ResponseDataset::create(model.attributes, std::move(rows),
                                   apt ? Method::APT : Method::CATA);
}

const std::vector<std::string> kPaperAttributes = {
    "Fruity", "Linger", "Dry",   "Short", "Alcohol", "Light",  "Woody", "Fresh", "Vegetal",
    "Sweet",  "Bland",  "Rough", "Bitter", "Acid",   "Spicy",  "Strong", "Floral"};

const std::vector<std::string> kPaperProducts = {"MUSCAT",    "ITALIA",    "VIOGNIER1",
                                                 "VIOGNIER2", "CHAS-SPUR", "CHAS-MP"};

Eigen::MatrixXd paper_base_intensity() {
    // baseline latent level per attribute; with unit noise and zero
    // threshold these give citation rates between roughly 0.08 and 0.27
    const std::map<std::string, double> base = {
        {"Fruity", -0.6}, {"Linger", -1.0}, {"Dry", -0.8},    {"Short", -1.2},
        {"Alcohol", -0.8}, {"Light", -0.9}, {"Woody", -1.3},  {"Fresh", -0.7},
        {"Vegetal", -1.1}, {"Sweet", -0.9}, {"Bland", -1.2},  {"Rough", -1.4},
        {"Bitter", -1.1},  {"Acid", -0.9},  {"Spicy", -1.2},  {"Strong", -1.0},
        {"Floral", -1.0}};
    Eigen::MatrixXd mu(kPaperProducts.size(), kPaperAttributes.size());
    for (std::size_t i = 0; i < kPaperProducts.size(); ++i)
        for (std::size_t j = 0; j < kPaperAttributes.size(); ++j)
            mu(i, j) = base.at(kPaperAttributes[j]);
    return mu;
}

void add_association(Eigen::MatrixXd& mu, const std::string& product,
                     const std::map<std::string, double>& lift) {
    const auto pi = std::find(kPaperProducts.begin(), kPaperProducts.end(), product) -
                    kPaperProducts.begin();
    for (const auto& [attr, delta] : lift) {
        const auto aj = std::find(kPaperAttributes.begin(), kPaperAttributes.end(), attr) -
                        kPaperAttributes.begin();
        mu(pi, aj) += delta;
    }
}

// Association lifts calibrated so that, at 65 panelists, the CATA
// independence p-value crosses 0.05 in the 35..55 panelist range while the
// duplicate pair stays mutually nearest on the CA map in nearly every run.
Eigen::MatrixXd paper_shaped_intensity() {
    Eigen::MatrixXd mu = paper_base_intensity();
    add_association(mu, "MUSCAT", {{"Floral", 0.22}, {"Fruity", 0.22}, {"Sweet", 0.198}});
    add_association(mu, "ITALIA", {{"Spicy", 0.25}, {"Linger", 0.25}, {"Woody", 0.20}});
    const std::map<std::string, double> viognier = {
        {"Dry", 0.85}, {"Acid", 0.765}, {"Bitter", 0.595}, {"Short", 0.51}};
    add_association(mu, "VIOGNIER1", viognier);
    add_association(mu, "VIOGNIER2", viognier);
    add_association(mu, "CHAS-SPUR", {{"Alcohol", 0.22}, {"Strong", 0.198}, {"Rough", 0.11}});
    add_association(mu, "CHAS-MP",
                    {{"Light", 0.22}, {"Vegetal", 0.198}, {"Fresh", 0.132}, {"Bland", 0.088}});
    return mu;
}

std::map<std::string, double> paper_hedonic_means() {
    return {{"MUSCAT", 6.4},    {"ITALIA", 5.5},    {"VIOGNIER1", 5.4},
            {"CHAS-SPUR", 5.2}, {"CHAS-MP", 5.2},   {"VIOGNIER2", 5.1}};
}

// The pivot is an equal blend, so product contrasts reach the APT panelist
// compressed; the matched APT model widens the perceptual noise by this
// factor (on top of the sqrt(2) from comparing two fresh sips).
constexpr double kBlendCompression = 4.0;

} // namespace

ResponseDataset simulate_cata(const PerceptionModel& model, int panelists, const SeedSpec& seed) {
    return simulate_impl(model, panelists, seed, false);
}

ResponseDataset simulate_apt(const PerceptionModel& model, int panelists, const SeedSpec& seed) {
    return simulate_impl(model, panelists, seed, true);
}

std::vector<std::string> scenario_names() {
    return {"null", "paper-shaped", "paper-shaped-apt", "strong"};
}

PerceptionModel scenario(const std::string& name) {
    PerceptionModel model;
    model.name = name;
    model.products = kPaperProducts;
    model.attributes = AttributeList(kPaperAttributes);
    model.noise_sd = 1.0;
    model.cata_threshold = 0.0;
    model.apt_threshold = 0.7;
    model.hedonic_means = paper_hedonic_means();
    model.hedonic_sd = 1.0;

    if (name == "null") {
        // identical products; threshold tuned so every citation rate is
        // ~0.03, where the independence p-value is close to uniform
        model.intensity = Eigen::MatrixXd::Zero(kPaperProducts.size(), kPaperAttributes.size());
        model.cata_threshold = 1.8808;
        model.hedonic_means.clear();
    } else if (name == "paper-shaped") {
        model.intensity = paper_shaped_intensity();
    } else if (name == "paper-shaped-apt") {
        model.intensity = paper_shaped_intensity();
        model.noise_sd = kBlendCompression; // 1.0 x blend compression
    } else if (name == "strong") {
        Eigen::MatrixXd mu = paper_base_intensity();
        add_association(mu, "MUSCAT", {{"Floral", 1.2}, {"Fruity", 1.2}, {"Sweet", 1.0}});
        add_association(mu, "ITALIA", {{"Spicy", 1.2}, {"Linger", 1.0}, {"Woody", 1.0}});
        add_association(mu, "VIOGNIER1", {{"Dry", 1.2}, {"Acid", 1.0}, {"Bitter", 0.8}});
        add_association(mu, "VIOGNIER2", {{"Dry", 1.2}, {"Acid", 1.0}, {"Bitter", 0.8}});
        add_association(mu, "CHAS-SPUR", {{"Alcohol", 1.2}, {"Strong", 1.2}, {"Rough", 0.8}});
        add_association(mu, "CHAS-MP", {{"Light", 1.2}, {"Vegetal", 1.2}, {"Fresh", 0.8}});
        model.intensity = mu;
    } else {
        raise(errc::domain_error, "unknown scenario: " + name);
    }
    model.validate();
    return model;
}

namespace {

std::vector<std::string> split_cells(const std::string& line, char sep) {
    std::vector<std::string> cells;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            cells.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    cells.push_back(cur);
    return cells;
}

double parse_double(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (...) {
        raise(errc::domain_error, "cannot parse number \"" + s + "\" for " + what);
    }
}

} // namespace

PerceptionModel load_model(const std::string& params_path) {
    std::ifstream in(params_path, std::ios::binary);
    if (!in) raise(errc::io_error, "cannot open " + params_path);

    PerceptionModel model;
    model.name = std::filesystem::path(params_path).stem().string();
    std::string intensity_file;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            raise(errc::domain_error, "model parameter line without '=': " + line);
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "intensity") intensity_file = value;
        else if (key == "noise_sd") model.noise_sd = parse_double(value, key);
        else if (key == "cata_threshold") model.cata_threshold = parse_double(value, key);
        else if (key == "apt_threshold") model.apt_threshold = parse_double(value, key);
        else if (key == "hedonic_sd") model.hedonic_sd = parse_double(value, key);
        else if (key == "name") model.name = value;
        else raise(errc::domain_error, "unknown model parameter: " + key);
    }
    if (intensity_file.empty())
        raise(errc::domain_error, "model file must name an intensity CSV");

    const auto csv_path = std::filesystem::path(params_path).parent_path() / intensity_file;
    std::ifstream csv(csv_path, std::ios::binary);
    if (!csv) raise(errc::io_error, "cannot open " + csv_path.string());

    std::vector<std::string> lines;
    while (std::getline(csv, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.size() < 3) raise(errc::domain_error, "intensity CSV needs a header and 2+ products");
    auto header = split_cells(lines[0], ';');
    if (header.size() < 3 || header[0] != "Product")
        raise(errc::domain_error, "intensity CSV header must be Product;<attributes...>");
    bool has_hedonic = false;
    if (header.back() == "Hedonic") {
        has_hedonic = true;
        header.pop_back();
    }
    model.attributes = AttributeList(std::vector<std::string>(header.begin() + 1, header.end()));

    const int J = static_cast<int>(model.attributes.size());
    model.intensity = Eigen::MatrixXd(lines.size() - 1, J);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const auto cells = split_cells(lines[li], ';');
        if (static_cast<int>(cells.size()) != 1 + J + (has_hedonic ? 1 : 0))
            raise(errc::domain_error, "intensity CSV row has wrong cell count: " + lines[li]);
        model.products.push_back(cells[0]);
        for (int j = 0; j < J; ++j)
            model.intensity(li - 1, j) = parse_double(cells[1 + j], "intensity");
        if (has_hedonic)
            model.hedonic_means[cells[0]] = parse_double(cells.back(), "hedonic mean");
    }
    model.validate();
    return model;
}

void save_model(const PerceptionModel& model, const std::string& params_path,
                const std::string& intensity_csv_path) {
    model.validate();
    {
        std::ofstream out(params_path, std::ios::binary);
        if (!out) raise(errc::io_error, "cannot write " + params_path);
        out << "name=" << model.name << '\n';
        out << "intensity=" << std::filesystem::path(intensity_csv_path).filename().string()
            << '\n';
        out << "noise_sd=" << format_general(model.noise_sd) << '\n';
        out << "cata_threshold=" << format_general(model.cata_threshold) << '\n';
        out << "apt_threshold=" << format_general(model.apt_threshold) << '\n';
        out << "hedonic_sd=" << format_general(model.hedonic_sd) << '\n';
    }
    const auto csv_path =
        std::filesystem::path(params_path).parent_path() / intensity_csv_path;
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) raise(errc::io_error, "cannot write " + csv_path.string());
    csv << "Product";
    for (const auto& a : model.attributes.names) csv << ';' << a;
    const bool hedonic = !model.hedonic_means.empty();
    if (hedonic) csv << ";Hedonic";
    csv << '\n';
    for (std::size_t i = 0; i < model.products.size(); ++i) {
        csv << model.products[i];
        for (int j = 0; j < model.intensity.cols(); ++j)
            csv << ';' << format_general(model.intensity(i, j));
        if (hedonic) csv << ';' << format_general(model.hedonic_means.at(model.products[i]));
        csv << '\n';
    }
}

} // namespace catapt
