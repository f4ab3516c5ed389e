// Command-line front end: measure single functions, run verification sweeps,
// inspect communication-side objects.
//
// Exit codes: 0 success / no violations, 1 violation found, 2 usage error,
// 3 cap exceeded.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <boolfun/boolfun.hpp>

namespace
{

struct Options
{
  std::string format = "text";
  std::string out;
  int jobs = 0;
  boolfun::Caps caps;
};

// hard ceilings for the runtime-facing caps
constexpr boolfun::Caps hard_caps{ 16, 16, 12, 14 };

void add_common( CLI::App* cmd, Options& opt )
{
  cmd->add_option( "--format", opt.format, "Output format" )
      ->check( CLI::IsMember( { "json", "csv", "text" } ) )
      ->envname( "BOOLFUN_FORMAT" );
  cmd->add_option( "--out", opt.out, "Write output to a file instead of stdout" )->envname( "BOOLFUN_OUT" );
  cmd->add_option( "--jobs", opt.jobs, "Worker threads (0 = all cores)" )->envname( "BOOLFUN_JOBS" );
  cmd->add_option( "--cap-bs", opt.caps.block_sensitivity, "Block sensitivity arity cap" )
      ->check( CLI::Range( 0, hard_caps.block_sensitivity ) )
      ->envname( "BOOLFUN_CAP_BS" );
  cmd->add_option( "--cap-cert", opt.caps.certificate, "Certificate arity cap" )
      ->check( CLI::Range( 0, hard_caps.certificate ) )
      ->envname( "BOOLFUN_CAP_CERT" );
  cmd->add_option( "--cap-cmincl", opt.caps.cmin_closure, "Cmin-closure arity cap" )
      ->check( CLI::Range( 0, hard_caps.cmin_closure ) )
      ->envname( "BOOLFUN_CAP_CMINCL" );
  cmd->add_option( "--cap-dt", opt.caps.decision_tree, "Decision tree arity cap" )
      ->check( CLI::Range( 0, hard_caps.decision_tree ) )
      ->envname( "BOOLFUN_CAP_DT" );
}

void emit( const Options& opt, const std::string& payload )
{
  if ( opt.out.empty() )
  {
    std::cout << payload;
    return;
  }
  std::ofstream f( opt.out, std::ios::binary );
  if ( !f )
  {
    throw std::runtime_error( "cannot open " + opt.out );
  }
  f << payload;
}

std::string json_as_kv_csv( const boolfun::json& j, const std::string& prefix = "" )
{
  std::string out;
  for ( const auto& [key, value] : j.items() )
  {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if ( value.is_object() )
    {
      out += json_as_kv_csv( value, path );
    }
    else if ( value.is_primitive() )
    {
      out += path + "," + boolfun::csv_quote( value.is_string() ? value.get<std::string>() : value.dump() ) + "\n";
    }
  }
  return out;
}

std::string measure_text( const boolfun::json& doc )
{
  std::string out;
  const auto& f = doc["function"];
  out += "function " + f["spec"].get<std::string>() + "  (n=" + f["n"].dump() + ", table " + f["table"].get<std::string>() + ")\n";
  const auto& m = doc["measures"];
  out += "  s    = " + m["sensitivity"]["value"].dump() + "   (witness x=" + m["sensitivity"]["witness_input"].dump() + ")\n";
  out += "  bs   = " + m["block_sensitivity"]["value"].dump() + "   (witness x=" + m["block_sensitivity"]["witness_input"].dump() +
         ", blocks " + m["block_sensitivity"]["blocks"].dump() + ")\n";
  out += "  C    = " + m["certificate"]["value"].dump() + "   (witness x=" + m["certificate"]["witness_input"].dump() +
         ", coords " + m["certificate"]["coords"].dump() + ")\n";
  out += "  Cmin = " + m["cmin"]["value"].dump() + "   (witness x=" + m["cmin"]["witness_input"].dump() + ")\n";
  out += "  Cmin-closure = " + m["cmin_closure"]["value"].dump() + "\n";
  out += "  dt   = " + m["dt_depth"].dump() + "\n";
  out += "  alt  = " + m["alt"]["value"].dump() + "   (chain " + m["alt"]["chain"].dump() + ")\n";
  const auto& sp = doc["spectra"];
  out += "  mono = " + sp["mono"].dump() + ", fourier sparsity = " + sp["fourier_sparsity"].dump() + ", deg2 = " + sp["deg2"].dump() + "\n";
  out += "  max terms " + doc["terms"]["max_terms"].dump() + ", min terms " + doc["terms"]["min_terms"].dump() + "\n";
  out += "theorems:\n";
  for ( const auto& v : doc["theorems"] )
  {
    if ( !v["applicable"].get<bool>() )
    {
      out += "  [" + v["id"].get<std::string>() + "]  skipped\n";
      continue;
    }
    out += "  [" + v["id"].get<std::string>() + "]  " + ( v["holds"].get<bool>() ? "holds" : "VIOLATION" ) +
           "  lhs=" + v["lhs"].dump() + " rhs=" + v["rhs"].dump() + "\n";
  }
  return out;
}

std::string sweep_text( const boolfun::SweepResult& r )
{
  std::string out = "space " + r.space + ": " + std::to_string( r.functions ) + " functions, " +
                    std::to_string( r.violations.size() ) + " violations\n";
  for ( const auto& st : r.per_theorem )
  {
    out += "  [" + st.id + "]  checked " + std::to_string( st.checked ) + ", holds " + std::to_string( st.holds );
    if ( st.violations )
    {
      out += ", VIOLATIONS " + std::to_string( st.violations );
    }
    if ( st.ratio_den > 0 )
    {
      out += ", max ratio " + boolfun::fixed4( double( st.ratio_num ) / double( st.ratio_den ) ) + " at " + st.witness;
    }
    out += "\n";
  }
  for ( const auto& v : r.violations )
  {
    out += "  violation: " + v.theorem + " on " + v.function + "\n";
  }
  return out;
}

boolfun::SweepSpace parse_space( const std::string& text )
{
  constexpr std::string_view prefix = "exhaustive:";
  if ( text.rfind( prefix, 0 ) == 0 )
  {
    const auto digits = text.substr( prefix.size() );
    if ( digits.empty() || digits.find_first_not_of( "0123456789" ) != std::string::npos )
    {
      throw boolfun::parse_error( "bad exhaustive space: " + text );
    }
    return boolfun::SweepSpace::exhaustive( std::stoi( digits ) );
  }
  // comma-separated list of function specs; family args keep their commas
  // because they sit inside parentheses
  std::vector<std::string> specs;
  std::string cur;
  int depth = 0;
  for ( char c : text )
  {
    if ( c == '(' )
    {
      ++depth;
    }
    if ( c == ')' )
    {
      --depth;
    }
    if ( c == ',' && depth == 0 )
    {
      specs.push_back( cur );
      cur.clear();
    }
    else
    {
      cur += c;
    }
  }
  if ( !cur.empty() )
  {
    specs.push_back( cur );
  }
  if ( specs.empty() )
  {
    throw boolfun::parse_error( "empty function list" );
  }
  return boolfun::SweepSpace::from_list( std::move( specs ) );
}

} // namespace

int main( int argc, char** argv )
{
  CLI::App app{ "Exact Boolean function complexity toolkit" };
  app.require_subcommand( 1 );

  Options opt;

  std::string measure_spec;
  auto* measure = app.add_subcommand( "measure", "All measures, spectra, terms and theorem verdicts of one function" );
  measure->add_option( "spec", measure_spec, "<n>:<hex> or family:name(k=v,...)[#seed]" )->required();
  add_common( measure, opt );

  std::string verify_space;
  std::vector<std::string> thms;
  bool all_thms = false;
  auto* verify = app.add_subcommand( "verify", "Run theorem checkers over a function space" );
  verify->add_option( "space", verify_space, "exhaustive:<n> or comma-separated function specs" )->required();
  verify->add_option( "--thm", thms, "Theorem id (repeatable), e.g. --thm 3.2" );
  verify->add_flag( "--all", all_thms, "Check every theorem (default when no --thm given)" );
  add_common( verify, opt );

  std::string comm_spec;
  bool and_side = false, xor_side = false;
  auto* comm = app.add_subcommand( "comm", "Rank identities, covers, bound report and protocol checks" );
  comm->add_option( "spec", comm_spec, "<n>:<hex> or family:name(k=v,...)[#seed]" )->required();
  comm->add_flag( "--and", and_side, "AND composition section only" );
  comm->add_flag( "--xor", xor_side, "XOR composition section only" );
  add_common( comm, opt );

  try
  {
    app.parse( argc, argv );
  }
  catch ( const CLI::ParseError& e )
  {
    const int code = app.exit( e );
    return code == 0 ? 0 : 2;
  }

  try
  {
    if ( measure->parsed() )
    {
      const auto t = boolfun::parse_function_spec( measure_spec );
      const auto doc = boolfun::measure_document( measure_spec, t, opt.caps );
      if ( opt.format == "json" )
      {
        emit( opt, doc.dump( 2 ) + "\n" );
      }
      else if ( opt.format == "csv" )
      {
        emit( opt, json_as_kv_csv( doc ) );
      }
      else
      {
        emit( opt, measure_text( doc ) );
      }
      return 0;
    }
    if ( verify->parsed() )
    {
      if ( all_thms )
      {
        thms.clear();
      }
      const auto space = parse_space( verify_space );
      const auto result = boolfun::sweep( space, thms, opt.jobs, opt.caps );
      if ( opt.format == "json" )
      {
        emit( opt, boolfun::to_json( result ).dump( 2 ) + "\n" );
      }
      else if ( opt.format == "csv" )
      {
        emit( opt, boolfun::to_csv( result ) );
      }
      else
      {
        emit( opt, sweep_text( result ) );
      }
      return result.ok() ? 0 : 1;
    }
    if ( comm->parsed() )
    {
      const auto t = boolfun::parse_function_spec( comm_spec );
      const bool both = and_side == xor_side;
      const auto doc = boolfun::comm_document( comm_spec, t, both || and_side, both || xor_side, opt.caps );
      if ( opt.format == "json" )
      {
        emit( opt, doc.dump( 2 ) + "\n" );
      }
      else if ( opt.format == "csv" )
      {
        emit( opt, json_as_kv_csv( doc ) );
      }
      else
      {
        emit( opt, doc.dump( 2 ) + "\n" );
      }
      return 0;
    }
  }
  catch ( const boolfun::cap_exceeded& e )
  {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return 3;
  }
  catch ( const boolfun::parse_error& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  catch ( const std::invalid_argument& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  catch ( const std::exception& e )
  {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
