#include "cli.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace qtr::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kBlock = 64;

json json_integer(const Integer& v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(to_string(v));
}

Integer parse_integer(const std::string& text, const char* flag) {
    Integer v;
    if (text.empty() || v.set_str(text, 10) != 0) {
        throw CLI::ValidationError(flag, "not an integer: " + text);
    }
    return v;
}

// Runs body(i) for i in [0, count) across `jobs` threads in blocks of kBlock.
template <typename Body>
void parallel_for(std::uint64_t count, unsigned jobs, Body body) {
    jobs = std::max(1u, jobs);
    if (jobs == 1 || count <= kBlock) {
        for (std::uint64_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (;;) {
                std::uint64_t start = next.fetch_add(kBlock);
                if (start >= count) return;
                std::uint64_t stop = std::min(count, start + kBlock);
                for (std::uint64_t i = start; i < stop; ++i) body(i);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(count);
        }
    };
    std::vector<std::thread> threads;
    for (unsigned j = 0; j < jobs; ++j) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (failure) std::rethrow_exception(failure);
}

std::string text_rank_line(const RankResult& r) {
    std::ostringstream s;
    s << "mu=" << r.mu << " r*=" << r.r_star << " rank=" << r.rank;
    return s.str();
}

std::string polynomial_string(const DefiningPolynomial& poly) {
    std::ostringstream s;
    s << "x^4 " << (sgn(poly.x2) < 0 ? "- " : "+ ") << to_string(abs(poly.x2)) << "x^2 "
      << (sgn(poly.x0) < 0 ? "- " : "+ ") << to_string(abs(poly.x0));
    return s.str();
}

json table_as_json(const CharacterTable& table) { return json::parse(table_json(table)); }

const char* csv_header(bool include_skipped) {
    return include_skipped ? "n,delta,shape,mu,r_star,rank,case,conductor,reason"
                           : "n,delta,shape,mu,r_star,rank,case,conductor";
}

}  // namespace

std::optional<Format> parse_format(std::string_view name) {
    if (name == "text") return Format::Text;
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    return std::nullopt;
}

ScanRow make_row(const FieldInput& input) {
    NShape shape = n_shape(input);
    RankResult closed = rank_closed(shape);
    RankResult unified = rank_unified(shape, input.base());
    if (closed.rank != unified.rank || closed.mu != unified.mu || closed.r_star != unified.r_star) {
        throw InternalError("rank paths disagree for ell=" + to_string(input.ell()) + " n=" + to_string(input.n()) +
                            ": closed " + text_rank_line(closed) + ", unified " + text_rank_line(unified));
    }
    ScanRow row;
    row.n = input.n();
    row.delta = shape.delta;
    row.shape = shape_string(shape);
    row.mu = closed.mu;
    row.r_star = closed.r_star;
    row.rank = closed.rank;
    row.case_tag = closed.case_tag;
    row.conductor = conductor(to_williams(input), input.ell()).f;
    return row;
}

std::vector<ScanRow> scan(const ScanOptions& options) {
    auto base = make_base_field(options.ell);
    std::vector<std::optional<ScanRow>> slots(options.n_max);

    parallel_for(options.n_max, options.jobs, [&](std::uint64_t i) {
        Integer n;
        mpz_set_ui(n.get_mpz_t(), static_cast<unsigned long>(i + 1));
        try {
            ScanRow row = make_row(validate(base, n));
            if (!options.rank_filter || row.rank == *options.rank_filter) slots[i] = std::move(row);
        } catch (const InvalidField& e) {
            if (options.include_skipped && !options.rank_filter) {
                ScanRow row;
                row.n = n;
                row.skip_reason = std::string(to_string(e.code()));
                slots[i] = std::move(row);
            }
        }
    });

    std::vector<ScanRow> rows;
    for (auto& slot : slots) {
        if (slot) rows.push_back(std::move(*slot));
    }
    return rows;
}

void write_rows(std::ostream& out, const std::vector<ScanRow>& rows, Format format, bool include_skipped) {
    switch (format) {
        case Format::Csv: {
            out << csv_header(include_skipped) << '\n';
            for (const auto& r : rows) {
                out << to_string(r.n) << ',';
                if (r.skip_reason) {
                    out << ",,,,,,," << *r.skip_reason << '\n';
                    continue;
                }
                out << r.delta << ',' << r.shape << ',' << r.mu << ',' << r.r_star << ',' << r.rank << ','
                    << r.case_tag << ',' << to_string(r.conductor);
                if (include_skipped) out << ',';
                out << '\n';
            }
            break;
        }
        case Format::Json: {
            json arr = json::array();
            for (const auto& r : rows) {
                json o;
                o["n"] = json_integer(r.n);
                if (r.skip_reason) {
                    o["reason"] = *r.skip_reason;
                } else {
                    o["delta"] = r.delta;
                    o["shape"] = r.shape;
                    o["mu"] = r.mu;
                    o["r_star"] = r.r_star;
                    o["rank"] = r.rank;
                    o["case"] = r.case_tag;
                    o["conductor"] = json_integer(r.conductor);
                }
                arr.push_back(std::move(o));
            }
            out << arr.dump(2) << '\n';
            break;
        }
        case Format::Text: {
            if (rows.empty()) break;
            auto pad = [](const std::string& text, std::size_t width) {
                // shape strings contain multi-byte middle dots; count code points
                std::size_t glyphs = 0;
                for (unsigned char ch : text) glyphs += (ch & 0xC0) != 0x80;
                return text + std::string(glyphs < width ? width - glyphs : 1, ' ');
            };
            out << std::right << std::setw(8) << "n" << "  " << pad("shape", 24) << std::setw(4) << "mu"
                << std::setw(4) << "r*" << std::setw(6) << "rank" << "  " << pad("case", 18) << "conductor\n";
            for (const auto& r : rows) {
                out << std::setw(8) << to_string(r.n) << "  ";
                if (r.skip_reason) {
                    out << "skipped: " << *r.skip_reason << '\n';
                    continue;
                }
                out << pad(r.shape, 24) << std::setw(4) << r.mu << std::setw(4) << r.r_star << std::setw(6) << r.rank
                    << "  " << pad(r.case_tag, 18) << to_string(r.conductor) << '\n';
            }
            break;
        }
    }
}

std::vector<CheckFailure> check_field(const FieldInput& input) {
    std::vector<CheckFailure> failures;
    auto fail = [&](Check c, const std::string& what) {
        failures.push_back({c, "ell=" + to_string(input.ell()) + " n=" + to_string(input.n()) + ": " + what});
    };

    NShape shape = n_shape(input);
    RamProfile profile = ram_profile(shape);
    CharacterTable table = character_table(shape, input.base());
    RankResult closed = rank_closed(shape);
    int table_r_star = r_star(table);
    int from_table = profile.mu + table_r_star - 3;
    RankResult unified = rank_unified(shape, input.base());

    if (closed.rank != unified.rank || unified.rank != from_table || closed.mu != profile.mu ||
        closed.r_star != table_r_star) {
        fail(Check::CrossPath, "closed " + text_rank_line(closed) + " vs unified " + text_rank_line(unified));
    }

    for (auto r : {UnitRow::MinusOne, UnitRow::Epsilon, UnitRow::MinusEpsilon}) {
        if (table.row_product(r) != 1) fail(Check::Hilbert, "row " + std::string(to_string(r)) + " multiplies to -1");
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (table.rows[2][i] != table.rows[0][i] * table.rows[1][i]) {
            fail(Check::Hilbert, "-eps row is not the product of -1 and eps rows");
        }
        if (table.columns[i].kind == ColumnKind::SqrtEll && table.rows[1][i] != -1) {
            fail(Check::Hilbert, "eps is a local norm at sqrt(ell)");
        }
    }

    WilliamsForm form = to_williams(input);
    Conductor f = conductor(form, input.ell());
    if ((f.e != 0) != profile.ram2) {
        fail(Check::Conductor, "conductor exponent " + std::to_string(f.e) + " but ram2=" +
                                   (profile.ram2 ? "true" : "false"));
    }

    Classification c = classify_small_rank(shape);
    if (c.rank ? *c.rank != closed.rank : closed.rank < 4) {
        fail(Check::Classify, "shape patterns say " + (c.rank ? std::to_string(*c.rank) : std::string(">=4")) +
                                  ", closed form says " + std::to_string(closed.rank));
    }

    if (r_star_from_shape(shape) != table_r_star) {
        fail(Check::RStar, "r* from table " + std::to_string(table_r_star) + " but shape shortcut " +
                               std::to_string(r_star_from_shape(shape)));
    }

    if (from_williams(form, input.ell()) != input.n()) {
        fail(Check::RoundTrip, "Williams form does not map back to n");
    }
    return failures;
}

VerifyReport verify(const Integer& ell, std::uint64_t n_max, unsigned jobs) {
    auto base = make_base_field(ell);
    std::vector<std::optional<std::vector<CheckFailure>>> slots(n_max);
    parallel_for(n_max, jobs, [&](std::uint64_t i) {
        Integer n;
        mpz_set_ui(n.get_mpz_t(), static_cast<unsigned long>(i + 1));
        try {
            slots[i] = check_field(validate(base, n));
        } catch (const InvalidField&) {
        }
    });

    VerifyReport report;
    for (const auto& slot : slots) {
        if (!slot) {
            ++report.skipped;
            continue;
        }
        ++report.fields;
        for (const auto& f : *slot) {
            switch (f.check) {
                case Check::CrossPath: ++report.cross_path_failures; break;
                case Check::Hilbert: ++report.hilbert_failures; break;
                case Check::Conductor: ++report.conductor_failures; break;
                case Check::Classify: ++report.classify_failures; break;
                case Check::RStar: ++report.r_star_failures; break;
                case Check::RoundTrip: ++report.round_trip_failures; break;
            }
            report.offenders.push_back(f.message);
        }
    }
    return report;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"2-rank of class groups of real cyclic quartic fields Q(sqrt(n*eps0*sqrt(l)))"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "qtr 0.1.0");

    std::string ell_text, n_text, format_text;
    std::uint64_t n_max = 0;
    int rank_filter = -1;
    unsigned jobs = 1;
    bool include_skipped = false;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format_text, "Output format")->check(CLI::IsMember({"text", "csv", "json"}));
    };
    auto add_ell = [&](CLI::App* sub) { sub->add_option("--ell", ell_text, "Prime ell = 5 (mod 8)")->required(); };
    auto add_n = [&](CLI::App* sub) { sub->add_option("--n", n_text, "Squarefree n prime to ell")->required(); };

    auto* rank_cmd = app.add_subcommand("rank", "2-rank by both computations, with the character table");
    add_ell(rank_cmd);
    add_n(rank_cmd);
    add_format(rank_cmd);

    auto* scan_cmd = app.add_subcommand("scan", "Census over n = 1..n-max");
    add_ell(scan_cmd);
    scan_cmd->add_option("--n-max", n_max, "Largest n")->required();
    scan_cmd->add_option("--rank", rank_filter, "Keep only rows with this rank")->check(CLI::NonNegativeNumber);
    scan_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    scan_cmd->add_flag("--include-skipped", include_skipped, "Also list invalid n with a reason");
    add_format(scan_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "Check every invariant over n = 1..n-max");
    add_ell(verify_cmd);
    verify_cmd->add_option("--n-max", n_max, "Largest n")->required();
    verify_cmd->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    add_format(verify_cmd);

    auto* unit_cmd = app.add_subcommand("unit", "Fundamental unit (u + v sqrt(l))/2");
    add_ell(unit_cmd);
    add_format(unit_cmd);

    auto* conductor_cmd = app.add_subcommand("conductor", "Williams form and conductor");
    add_ell(conductor_cmd);
    add_n(conductor_cmd);
    add_format(conductor_cmd);

    auto* poly_cmd = app.add_subcommand("poly", "Defining polynomial x^4 - n v l x^2 + n^2 l");
    add_ell(poly_cmd);
    add_n(poly_cmd);
    add_format(poly_cmd);

    auto* table_cmd = app.add_subcommand("table", "Norm residue character table");
    add_ell(table_cmd);
    add_n(table_cmd);
    add_format(table_cmd);

    auto* classify_cmd = app.add_subcommand("classify", "Small-rank classification from the shape of n");
    add_ell(classify_cmd);
    add_n(classify_cmd);
    add_format(classify_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInvalid;
    }

    Format format = Format::Text;
    if (const char* env = std::getenv("QTR_DEFAULT_FORMAT"); env && *env) {
        auto f = parse_format(env);
        if (!f) {
            err << "QTR_DEFAULT_FORMAT must be text, csv or json (got '" << env << "')\n";
            return kExitInvalid;
        }
        format = *f;
    }
    if (!format_text.empty()) format = *parse_format(format_text);

    try {
        Integer ell = parse_integer(ell_text, "--ell");

        if (*scan_cmd) {
            ScanOptions options{ell, n_max, std::nullopt, jobs, include_skipped};
            if (rank_filter >= 0) options.rank_filter = rank_filter;
            write_rows(out, scan(options), format, include_skipped && !options.rank_filter);
            return kExitOk;
        }

        if (*verify_cmd) {
            VerifyReport r = verify(ell, n_max, jobs);
            if (format == Format::Json) {
                json o;
                o["ell"] = json_integer(ell);
                o["n_max"] = n_max;
                o["fields"] = r.fields;
                o["skipped"] = r.skipped;
                o["cross_path_failures"] = r.cross_path_failures;
                o["hilbert_failures"] = r.hilbert_failures;
                o["conductor_failures"] = r.conductor_failures;
                o["classify_failures"] = r.classify_failures;
                o["r_star_failures"] = r.r_star_failures;
                o["round_trip_failures"] = r.round_trip_failures;
                o["offenders"] = r.offenders;
                o["pass"] = r.failures() == 0;
                out << o.dump(2) << '\n';
            } else {
                out << "ell=" << to_string(ell) << " n<=" << n_max << ": " << r.fields << " fields checked, "
                    << r.skipped << " skipped\n";
                out << "  cross-path        " << r.cross_path_failures << " failures\n";
                out << "  hilbert-product   " << r.hilbert_failures << " failures\n";
                out << "  conductor-bridge  " << r.conductor_failures << " failures\n";
                out << "  classify          " << r.classify_failures << " failures\n";
                out << "  r*-shortcut       " << r.r_star_failures << " failures\n";
                out << "  williams-round    " << r.round_trip_failures << " failures\n";
                for (const auto& m : r.offenders) out << "  FAIL " << m << '\n';
                out << (r.failures() == 0 ? "PASS" : "FAIL") << '\n';
            }
            return r.failures() == 0 ? kExitOk : kExitInternal;
        }

        if (*unit_cmd) {
            auto base = make_base_field(ell);
            const auto& u = base->unit;
            Integer norm = u.u * u.u - ell * u.v * u.v;
            if (format == Format::Json) {
                json o;
                o["ell"] = json_integer(ell);
                o["u"] = json_integer(u.u);
                o["v"] = json_integer(u.v);
                o["norm_times_4"] = json_integer(norm);
                out << o.dump(2) << '\n';
            } else if (format == Format::Csv) {
                out << "ell,u,v,norm_times_4\n"
                    << to_string(ell) << ',' << to_string(u.u) << ',' << to_string(u.v) << ',' << to_string(norm) << '\n';
            } else {
                out << "eps0 = (u + v*sqrt(" << to_string(ell) << "))/2\n";
                out << "u=" << to_string(u.u) << '\n' << "v=" << to_string(u.v) << '\n';
                out << "u^2 - " << to_string(ell) << "*v^2 = " << to_string(norm) << '\n';
            }
            return norm == -4 ? kExitOk : kExitInternal;
        }

        FieldInput input = validate(ell, parse_integer(n_text, "--n"));

        if (*conductor_cmd) {
            WilliamsForm w = to_williams(input);
            Conductor f = conductor(w, ell);
            if (format == Format::Json) {
                json o;
                o["ell"] = json_integer(ell);
                o["n"] = json_integer(input.n());
                o["a"] = json_integer(w.a);
                o["b"] = json_integer(w.b);
                o["c"] = json_integer(w.c);
                o["e"] = f.e;
                o["f"] = json_integer(f.f);
                out << o.dump(2) << '\n';
            } else if (format == Format::Csv) {
                out << "ell,n,a,b,c,e,f\n"
                    << to_string(ell) << ',' << to_string(input.n()) << ',' << to_string(w.a) << ',' << to_string(w.b)
                    << ',' << to_string(w.c) << ',' << f.e << ',' << to_string(f.f) << '\n';
            } else {
                out << "K = Q(sqrt(" << to_string(w.a) << "(" << to_string(ell) << " + " << to_string(w.b) << "*sqrt("
                    << to_string(ell) << "))))\n";
                out << "a=" << to_string(w.a) << " b=" << to_string(w.b) << " c=" << to_string(w.c) << '\n';
                out << "e=" << f.e << '\n' << "f=" << to_string(f.f) << '\n';
            }
            return kExitOk;
        }

        if (*poly_cmd) {
            DefiningPolynomial p = defining_polynomial(input);
            bool eisenstein = is_eisenstein(p, ell);
            bool cyclic = is_perfect_square(cyclicity_certificate(p));
            if (format == Format::Json) {
                json o;
                o["ell"] = json_integer(ell);
                o["n"] = json_integer(input.n());
                o["coefficients"] = json::array({1, 0, json_integer(p.x2), 0, json_integer(p.x0)});
                o["eisenstein"] = eisenstein;
                o["cyclic"] = cyclic;
                out << o.dump(2) << '\n';
            } else if (format == Format::Csv) {
                out << "ell,n,x4,x3,x2,x1,x0,eisenstein,cyclic\n"
                    << to_string(ell) << ',' << to_string(input.n()) << ",1,0," << to_string(p.x2) << ",0,"
                    << to_string(p.x0) << ',' << eisenstein << ',' << cyclic << '\n';
            } else {
                out << polynomial_string(p) << '\n';
                out << "eisenstein at " << to_string(ell) << ": " << (eisenstein ? "yes" : "no") << '\n';
                out << "cyclic certificate square: " << (cyclic ? "yes" : "no") << '\n';
            }
            return eisenstein && cyclic ? kExitOk : kExitInternal;
        }

        NShape shape = n_shape(input);

        if (*table_cmd) {
            CharacterTable t = character_table(shape, input.base());
            if (format == Format::Json) {
                out << table_as_json(t).dump(2) << '\n';
            } else if (format == Format::Csv) {
                out << "unit";
                for (const auto& c : t.columns) out << ',' << c.label();
                out << '\n';
                for (auto r : {UnitRow::MinusOne, UnitRow::Epsilon, UnitRow::MinusEpsilon}) {
                    out << to_string(r);
                    for (int e : t.row(r)) out << ',' << e;
                    out << '\n';
                }
            } else {
                out << table_text(t);
            }
            return kExitOk;
        }

        if (*classify_cmd) {
            Classification c = classify_small_rank(shape);
            RankResult closed = rank_closed(shape);
            bool agree = c.rank ? *c.rank == closed.rank : closed.rank >= 4;
            if (format == Format::Json) {
                json o;
                o["ell"] = json_integer(ell);
                o["n"] = json_integer(input.n());
                o["shape"] = shape_string(shape);
                o["rank"] = c.rank ? json(*c.rank) : json(nullptr);
                o["at_least_4"] = c.at_least_four();
                o["pattern"] = c.pattern ? json(c.pattern->id) : json(nullptr);
                o["description"] = c.pattern ? json(c.pattern->description) : json(nullptr);
                out << o.dump(2) << '\n';
            } else if (format == Format::Csv) {
                out << "ell,n,shape,rank,pattern\n"
                    << to_string(ell) << ',' << to_string(input.n()) << ',' << shape_string(shape) << ','
                    << (c.rank ? std::to_string(*c.rank) : std::string(">=4")) << ','
                    << (c.pattern ? c.pattern->id : std::string()) << '\n';
            } else if (c.pattern) {
                out << "rank " << *c.rank << " via " << c.pattern->id << " (" << c.pattern->description << ")\n";
            } else {
                out << "rank >= 4 (no small-rank pattern matches " << shape_string(shape) << ")\n";
            }
            if (!agree) {
                err << "internal: classification disagrees with closed form rank " << closed.rank << '\n';
                return kExitInternal;
            }
            return kExitOk;
        }

        // rank
        RankResult closed = rank_closed(shape);
        RankResult unified = rank_unified(shape, input.base());
        CharacterTable t = character_table(shape, input.base());
        bool agree = closed.rank == unified.rank && closed.mu == unified.mu && closed.r_star == unified.r_star;
        if (format == Format::Json) {
            json o;
            o["ell"] = json_integer(ell);
            o["n"] = json_integer(input.n());
            o["shape"] = shape_string(shape);
            o["mu"] = closed.mu;
            o["r_star"] = closed.r_star;
            o["rank"] = closed.rank;
            o["case"] = closed.case_tag;
            o["unified"] = {{"mu", unified.mu}, {"r_star", unified.r_star}, {"rank", unified.rank}};
            o["agree"] = agree;
            o["table"] = table_as_json(t);
            out << o.dump(2) << '\n';
        } else if (format == Format::Csv) {
            write_rows(out, {make_row(input)}, Format::Csv, false);
        } else {
            out << "ell=" << to_string(ell) << " n=" << to_string(input.n()) << "  shape " << shape_string(shape) << '\n';
            out << "closed:  " << text_rank_line(closed) << "  case " << closed.case_tag << '\n';
            out << "unified: " << text_rank_line(unified) << '\n';
            out << table_text(t);
        }
        if (!agree) {
            err << "internal: rank paths disagree\n";
            return kExitInternal;
        }
        return kExitOk;
    } catch (const InvalidField& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const CLI::ValidationError& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace qtr::cli
