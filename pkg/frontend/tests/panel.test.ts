import { describe, expect, it } from 'vitest'

import { CatboxClient } from '../src/api.js'
import { PanelController } from '../src/controller.js'
import { fakeService } from './fake_service.js'

function makeController() {
  const service = fakeService()
  const client = new CatboxClient('http://fake', service.fetch)
  const controller = new PanelController(client)
  return { service, controller }
}

describe('panel controller', () => {
  it('creates a box and mirrors the initial panel', async () => {
    const { service, controller } = makeController()
    await controller.connect(7)
    expect(service.requests[0]).toEqual({
      method: 'POST',
      path: '/boxes',
      body: { seed: 7 },
    })
    expect(service.requests[1]).toEqual({
      method: 'GET',
      path: '/boxes/box-1',
      body: undefined,
    })
    expect(controller.model.seed).toBe(7)
    expect(controller.model.panel?.led).toBe('off')
    expect(controller.model.panel?.buttons.measure).toBe(false)
  })

  it('sends spec-shaped event requests for each control', async () => {
    const { service, controller } = makeController()
    await controller.connect()
    service.requests.length = 0

    await controller.press('prepare')
    await controller.press('select_s')
    await controller.press('measure')
    await controller.toggleLid() // closed -> lid_open
    await controller.toggleLid() // open -> lid_close

    expect(service.requests.map((r) => r.body)).toEqual([
      { event: 'prepare' },
      { event: 'select_s' },
      { event: 'measure' },
      { event: 'lid_open' },
      { event: 'lid_close' },
    ])
    for (const request of service.requests) {
      expect(request.method).toBe('POST')
      expect(request.path).toBe('/boxes/box-1/events')
    }
  })

  it('always adopts the returned panel verbatim', async () => {
    const { service, controller } = makeController()
    await controller.connect()
    await controller.press('prepare')
    expect(controller.model.panel?.display_id).toBe('MSG_PLUS')
    await controller.press('select_s')
    expect(controller.model.panel?.led).toBe('green')
    await controller.press('measure')
    expect(controller.model.panel?.display_id).toBe('MSG_STATE_PLUS')
    // the model never diverges from the fake's own box state
    const box = service.boxes.get('box-1')!
    expect(controller.model.panel?.display_text).toBe(box.displayText)
  })

  it('accumulates measurement outcomes reported by the server', async () => {
    const { controller } = makeController()
    await controller.connect()
    await controller.press('prepare')
    await controller.press('select_s')
    await controller.press('measure')
    await controller.press('measure')
    expect(controller.model.histograms['S']).toEqual({
      counts: { '+1': 2 },
      total: 2,
    })
  })

  it('lid open on a prepared cat reports the forced measurement', async () => {
    const { controller } = makeController()
    await controller.connect()
    await controller.press('prepare')
    await controller.toggleLid()
    expect(controller.model.panel?.led).toBe('white')
    expect(controller.model.panel?.lid).toBe('open')
    expect(controller.model.histograms['H']?.total).toBe(1)
    // outcome visible on the LCD exactly as the server rendered it
    expect(controller.model.panel?.display_text).toContain('Outcome:')
  })

  it('locks controls while a request is in flight', async () => {
    const { service, controller } = makeController()
    await controller.connect()
    service.requests.length = 0
    const first = controller.press('prepare')
    const second = controller.press('measure') // ignored: busy
    await Promise.all([first, second])
    expect(service.requests).toHaveLength(1)
    expect(controller.model.busy).toBe(false)
  })

  it('shows a busy toast on 409 and keeps working', async () => {
    const { service, controller } = makeController()
    await controller.connect()
    service.failNext = { status: 409, code: 'CONFLICT' }
    await controller.press('prepare')
    expect(controller.model.notice).toBe('panel busy — try again')
    await controller.press('prepare')
    expect(controller.model.notice).toBeNull()
    expect(controller.model.panel?.display_id).toBe('MSG_PLUS')
  })

  it('reports connection loss with a retriable banner', async () => {
    const { service, controller } = makeController()
    await controller.connect()
    service.offline = true
    await controller.press('prepare')
    expect(controller.model.notice).toMatch(/connection lost/)
    service.offline = false
    await controller.press('prepare')
    expect(controller.model.notice).toBeNull()
  })

  it('connect failure leaves a retriable model', async () => {
    const { service, controller } = makeController()
    service.offline = true
    await controller.connect()
    expect(controller.model.boxId).toBeNull()
    expect(controller.model.notice).toMatch(/connection lost/)
    service.offline = false
    await controller.connect()
    expect(controller.model.boxId).toBe('box-1')
  })
})
