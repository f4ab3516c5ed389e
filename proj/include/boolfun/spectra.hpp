/*!
  \file spectra.hpp
  \brief Exact polynomial representations: Moebius (over {0,1}), Fourier
  (over {+-1}, scaled by 2^n), ANF (over GF(2)).

  All coefficients are exact integers; Fourier coefficients are stored
  multiplied by 2^n so zero tests never touch floating point.  The sign
  convention maps input bit b to the character value (-1)^b, so 0 -> +1.
*/

#pragma once

#include <cstdint>
#include <vector>

#include "truth_table.hpp"

namespace boolfun
{

enum class SpectrumKind
{
  mobius,
  fourier_scaled,
  anf
};

/*! Coefficient vector indexed by subsets S under the point encoding. */
struct Spectrum
{
  SpectrumKind kind;
  int n;
  std::vector<std::int64_t> coeffs;
};

namespace detail
{

inline std::vector<std::int64_t> table_values( const TruthTable& t )
{
  std::vector<std::int64_t> v( t.size() );
  for ( Point x = 0; x < Point( t.size() ); ++x )
  {
    v[x] = t.get( x );
  }
  return v;
}

} // namespace detail

/*! Coefficients of f(x) = sum_{S subseteq supp(x)} alpha(S). */
inline Spectrum mobius_transform( const TruthTable& t )
{
  auto a = detail::table_values( t );
  for ( int d = 0; d < t.arity(); ++d )
  {
    const std::size_t bit = std::size_t( 1 ) << d;
    for ( std::size_t s = 0; s < a.size(); ++s )
    {
      if ( s & bit )
      {
        a[s] -= a[s ^ bit];
      }
    }
  }
  return { SpectrumKind::mobius, t.arity(), std::move( a ) };
}

/*! Scaled coefficients 2^n * fhat(S) via the fast orthogonal transform. */
inline Spectrum fourier_transform( const TruthTable& t )
{
  auto a = detail::table_values( t );
  for ( int d = 0; d < t.arity(); ++d )
  {
    const std::size_t bit = std::size_t( 1 ) << d;
    for ( std::size_t s = 0; s < a.size(); ++s )
    {
      if ( !( s & bit ) )
      {
        const auto lo = a[s], hi = a[s | bit];
        a[s] = lo + hi;
        a[s | bit] = lo - hi;
      }
    }
  }
  return { SpectrumKind::fourier_scaled, t.arity(), std::move( a ) };
}

/*! Algebraic normal form over GF(2); entries in {0,1}. */
inline Spectrum anf( const TruthTable& t )
{
  auto a = detail::table_values( t );
  for ( int d = 0; d < t.arity(); ++d )
  {
    const std::size_t bit = std::size_t( 1 ) << d;
    for ( std::size_t s = 0; s < a.size(); ++s )
    {
      if ( s & bit )
      {
        a[s] ^= a[s ^ bit];
      }
    }
  }
  return { SpectrumKind::anf, t.arity(), std::move( a ) };
}

inline std::uint64_t sparsity( const Spectrum& sp )
{
  std::uint64_t c = 0;
  for ( auto v : sp.coeffs )
  {
    c += v != 0;
  }
  return c;
}

/*! Moebius sparsity mono(f): nonzero multilinear coefficients over {0,1}. */
inline std::uint64_t mono_sparsity( const TruthTable& t )
{
  return sparsity( mobius_transform( t ) );
}

/*! Fourier sparsity: nonzero coefficients over the +-1 domain. */
inline std::uint64_t fourier_sparsity( const TruthTable& t )
{
  return sparsity( fourier_transform( t ) );
}

/*! \brief GF(2) degree: largest |S| with a nonzero ANF coefficient, 0 for constants.

  Runs the GF(2) butterfly on the packed words directly.
*/
inline int deg2( const TruthTable& t )
{
  const int n = t.arity();
  std::vector<std::uint64_t> w = t.words();
  for ( int d = 0; d < n && d < 6; ++d )
  {
    // within-word butterfly: high half of every 2^(d+1) block accumulates the low half
    std::uint64_t lo_blocks = 0;
    const std::uint64_t block = std::uint64_t( 1 ) << ( 1 << d );
    for ( int p = 0; p < 64; p += 2 << d )
    {
      lo_blocks |= ( block - 1 ) << p;
    }
    for ( auto& word : w )
    {
      word ^= ( word & lo_blocks ) << ( 1 << d );
    }
  }
  for ( int d = 6; d < n; ++d )
  {
    const std::size_t stride = std::size_t( 1 ) << ( d - 6 );
    for ( std::size_t s = 0; s < w.size(); ++s )
    {
      if ( s & stride )
      {
        w[s] ^= w[s ^ stride];
      }
    }
  }
  int best = 0;
  for ( std::size_t i = 0; i < w.size(); ++i )
  {
    std::uint64_t word = w[i];
    while ( word )
    {
      const int b = std::countr_zero( word );
      word &= word - 1;
      const auto s = ( std::uint64_t( i ) << 6 ) | std::uint64_t( b );
      const int deg = std::popcount( s );
      if ( deg > best )
      {
        best = deg;
      }
    }
  }
  return best;
}

/*! \brief Inverse transform back to a table; throws if the spectrum is not Boolean-valued.

  The round trip is the self-consistency oracle for all three kinds.
*/
inline TruthTable reconstruct( const Spectrum& sp )
{
  auto a = sp.coeffs;
  const std::size_t size = std::size_t( 1 ) << sp.n;
  if ( a.size() != size )
  {
    throw std::invalid_argument( "spectrum size mismatch" );
  }
  for ( int d = 0; d < sp.n; ++d )
  {
    const std::size_t bit = std::size_t( 1 ) << d;
    for ( std::size_t s = 0; s < size; ++s )
    {
      switch ( sp.kind )
      {
      case SpectrumKind::mobius:
        if ( s & bit )
        {
          a[s] += a[s ^ bit];
        }
        break;
      case SpectrumKind::anf:
        if ( s & bit )
        {
          a[s] ^= a[s ^ bit];
        }
        break;
      case SpectrumKind::fourier_scaled:
        if ( !( s & bit ) )
        {
          const auto lo = a[s], hi = a[s | bit];
          a[s] = lo + hi;
          a[s | bit] = lo - hi;
        }
        break;
      }
    }
  }
  TruthTable t( sp.n );
  for ( std::size_t x = 0; x < size; ++x )
  {
    std::int64_t v = a[x];
    if ( sp.kind == SpectrumKind::fourier_scaled )
    {
      if ( v % std::int64_t( size ) != 0 )
      {
        throw std::invalid_argument( "non-integral reconstruction" );
      }
      v /= std::int64_t( size );
    }
    if ( v != 0 && v != 1 )
    {
      throw std::invalid_argument( "reconstruction is not 0/1 valued" );
    }
    t.set( Point( x ), v != 0 );
  }
  return t;
}

} // namespace boolfun
