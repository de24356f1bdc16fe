/** Pure chart geometry: scales, polyline points and tick placement.
 * Nothing in here touches the DOM, so all of it runs under node tests.
 */

export interface Margin {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

export interface Frame {
  width: number;
  height: number;
  margin: Margin;
}

export const innerWidth = (f: Frame): number => f.width - f.margin.left - f.margin.right;
export const innerHeight = (f: Frame): number => f.height - f.margin.top - f.margin.bottom;

export interface LinearScale {
  (v: number): number;
  invert(px: number): number;
}

export const linearScale = (d0: number, d1: number, r0: number, r1: number): LinearScale => {
  const span = d1 - d0 || 1;
  const scale = ((v: number) => r0 + ((v - d0) / span) * (r1 - r0)) as LinearScale;
  scale.invert = (px) => d0 + ((px - r0) / (r1 - r0 || 1)) * span;
  return scale;
};

export const extent = (values: number[]): [number, number] => {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (lo > hi) return [0, 1];
  if (lo === hi) return [lo - 1, hi + 1];
  return [lo, hi];
};

/** Round tick positions at a 1/2/5 step, all inside [min, max]. */
export const ticks = (min: number, max: number, count: number): number[] => {
  const span = max - min;
  if (span <= 0 || count < 1) return [min];
  const raw = span / count;
  const pow = 10 ** Math.floor(Math.log10(raw));
  let step = pow;
  for (const m of [1, 2, 5, 10]) {
    if (pow * m >= raw) {
      step = pow * m;
      break;
    }
  }
  const out: number[] = [];
  for (let t = Math.ceil(min / step) * step; t <= max + 1e-9; t += step) {
    out.push(Math.round(t * 1e6) / 1e6);
  }
  return out;
};

export const polylinePoints = (
  years: number[],
  values: number[],
  x: LinearScale,
  y: LinearScale,
): string =>
  years
    .map((year, i) => `${round2(x(year))},${round2(y(values[i]))}`)
    .join(" ");

const round2 = (v: number): number => Math.round(v * 100) / 100;

/** Nearest whole year under the pointer, clamped to the domain. */
export const yearAtPixel = (
  px: number,
  invert: (px: number) => number,
  d0: number,
  d1: number,
): number => Math.min(Math.max(Math.round(invert(px)), d0), d1);
