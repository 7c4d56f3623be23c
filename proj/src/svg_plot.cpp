#include "practrel/svg_plot.hpp"

#include "practrel/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace practrel {

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr double kLeft = 64.0;
constexpr double kRight = 24.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 52.0;

std::string coord(double v) {
    return fmt::format("{:.2f}", v);
}

}  // namespace

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string render_svg(const LossSpec& spec, const RelevancePartition& part, const PlotSpec& plot) {
    if (plot.grid < 2) throw ParameterError("plot grid needs at least 2 points");
    if (plot.width < 200 || plot.height < 150) throw ParameterError("plot must be at least 200x150 pixels");

    const auto& space = spec.space();
    const std::size_t n = plot.grid;
    std::vector<double> xs(n), l0(n), l1(n);
    double ymax = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = i + 1 == n ? space.hi() : space.lo() + space.width() * static_cast<double>(i) / static_cast<double>(n - 1);
        l0[i] = evaluate_loss(spec, xs[i], Action::a0);
        l1[i] = evaluate_loss(spec, xs[i], Action::a1);
        ymax = std::max({ymax, l0[i], l1[i]});
    }
    if (!(ymax > 0.0)) ymax = 1.0;
    ymax *= 1.08;

    const double w = plot.width, h = plot.height;
    const double pw = w - kLeft - kRight, ph = h - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - space.lo()) / space.width() * pw; };
    auto py = [&](double y) { return kTop + ph - y / ymax * ph; };

    std::string s = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += fmt::format("<!-- practrel {} -->\n", kVersion);
    s += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
        "font-family=\"sans-serif\" font-size=\"12\">\n",
        plot.width, plot.height);
    s += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n", plot.width, plot.height);
    if (!plot.title.empty())
        s += fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                         coord(w / 2), xml_escape(plot.title));

    s += "<g class=\"regions\">\n";
    auto shade = [&](const RegionSet& set, const char* cls, const char* fill) {
        for (const auto& iv : set.intervals()) {
            const double x0 = px(iv.lo), x1 = px(iv.hi);
            s += fmt::format(
                "<rect class=\"{}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" fill-opacity=\"0.35\"/>\n",
                cls, coord(x0), coord(kTop), coord(std::max(x1 - x0, 0.5)), coord(ph), fill);
        }
    };
    shade(part.negligible, "negligible", "#9ecae1");
    shade(part.relevant, "relevant", "#fdae6b");
    s += "</g>\n";

    s += "<g class=\"axes\" stroke=\"black\">\n";
    s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\"/>\n", coord(kLeft), coord(kTop + ph),
                     coord(kLeft + pw));
    s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>\n", coord(kLeft), coord(kTop),
                     coord(kTop + ph));
    s += "</g>\n<g class=\"ticks\">\n";
    for (int i = 0; i < 5; ++i) {
        const double t = i / 4.0;
        const double xv = space.lo() + t * space.width();
        const double yv = t * ymax;
        s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", coord(px(xv)),
                         coord(kTop + ph), coord(kTop + ph + 5));
        s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{:.3g}</text>\n", coord(px(xv)),
                         coord(kTop + ph + 18), xv == 0.0 ? 0.0 : xv);
        s += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", coord(kLeft - 5),
                         coord(py(yv)), coord(kLeft));
        s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.3g}</text>\n", coord(kLeft - 8),
                         coord(py(yv) + 4), yv);
    }
    s += "</g>\n";
    s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">effect</text>\n", coord(kLeft + pw / 2),
                     coord(h - 10));
    s += fmt::format("<text x=\"14\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 14 {0})\">loss</text>\n",
                     coord(kTop + ph / 2));

    auto curve = [&](const std::vector<double>& ys, const char* cls, const char* color, const char* dash) {
        std::string pts;
        for (std::size_t i = 0; i < n; ++i) {
            if (i) pts += ' ';
            pts += coord(px(xs[i])) + "," + coord(py(ys[i]));
        }
        s += fmt::format("<polyline class=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"{} points=\"{}\"/>\n",
                         cls, color, dash, pts);
    };
    curve(l0, "loss-a0", "#08519c", " stroke-dasharray=\"2 4\"");
    curve(l1, "loss-a1", "#a63603", "");

    s += "<g class=\"crossings\">\n";
    for (double c : part.crossings) {
        const double y = evaluate_loss(spec, c, Action::a0);
        s += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"black\"/>\n", coord(px(c)), coord(py(y)));
        s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{:.3f}</text>\n", coord(px(c)),
                         coord(py(y) - 10), c == 0.0 ? 0.0 : c);
    }
    s += "</g>\n";

    const double lx = kLeft + pw - 150, ly = kTop + 14;
    s += "<g class=\"legend\">\n";
    s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#08519c\" stroke-width=\"2\" "
                     "stroke-dasharray=\"2 4\"/>\n",
                     coord(lx), coord(ly), coord(lx + 24), coord(ly));
    s += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", coord(lx + 30), coord(ly + 4), xml_escape(plot.a0_label));
    s += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#a63603\" stroke-width=\"2\"/>\n",
                     coord(lx), coord(ly + 18), coord(lx + 24), coord(ly + 18));
    s += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", coord(lx + 30), coord(ly + 22), xml_escape(plot.a1_label));
    s += "</g>\n</svg>\n";
    return s;
}

}  // namespace practrel
